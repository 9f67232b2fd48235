#pragma once

// Exhaustive labelled-graph oracle for n <= 8 vertices.
//
// Graphs are adjacency bitsets. Enumeration runs over edge masks: bit i of the
// mask is the i-th pair in colex order (0,1), (0,2), (1,2), (0,3), ...

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "subcrit/series.hpp"

namespace subcrit {

inline constexpr int kMaxOracleVertices = 8;

class SmallGraph {
public:
    SmallGraph() = default;
    explicit SmallGraph(int n);
    /// Decodes an edge mask over the colex pair order.
    static SmallGraph from_edge_mask(int n, std::uint32_t mask);
    static SmallGraph complete(int n);
    static SmallGraph cycle(int n);
    static SmallGraph path(int n);
    /// Complete bipartite graph on {0..a-1} and {a..a+b-1}.
    static SmallGraph complete_bipartite(int a, int b);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] std::uint8_t neighbours(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] bool has_edge(int u, int v) const { return (adj_[static_cast<std::size_t>(u)] >> v) & 1U; }
    [[nodiscard]] int edge_count() const;
    [[nodiscard]] std::uint32_t edge_mask() const;
    [[nodiscard]] std::uint8_t all_vertices() const { return static_cast<std::uint8_t>((1U << n_) - 1U); }

    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    /// Subgraph induced by the vertex set, relabelled in increasing order.
    [[nodiscard]] SmallGraph induced(std::uint8_t vertices) const;
    [[nodiscard]] SmallGraph without_vertex(int v) const;
    /// Merges v into u, dropping loops and parallel edges.
    [[nodiscard]] SmallGraph contract(int u, int v) const;
    /// Vertices of other are renumbered n() .. n()+other.n()-1.
    [[nodiscard]] SmallGraph disjoint_union(const SmallGraph& other) const;

    friend bool operator==(const SmallGraph& a, const SmallGraph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

private:
    int n_ = 0;
    std::array<std::uint8_t, kMaxOracleVertices> adj_{};
};

/// Number of vertex pairs, C(n,2).
constexpr int pair_count(int n) { return n * (n - 1) / 2; }

/// Calls visit for all 2^{C(n,2)} labelled graphs on n vertices, in increasing mask order.
void for_each_labelled_graph(int n, const std::function<void(const SmallGraph&)>& visit);
std::vector<SmallGraph> enumerate_labelled_graphs(int n);

/// Vertices reachable from v inside the vertex set `within`.
std::uint8_t component_of(const SmallGraph& g, int v, std::uint8_t within);
int component_count(const SmallGraph& g, std::uint8_t within);
bool is_connected(const SmallGraph& g);
/// Connected, at least 2 vertices, no cutvertex. K2 qualifies.
bool is_2connected(const SmallGraph& g);
/// Whether the subgraph induced by `within` is acyclic.
bool is_forest(const SmallGraph& g, std::uint8_t within);
bool is_forest(const SmallGraph& g);
bool is_planar(const SmallGraph& g);
/// Some set of at most k vertices leaves a forest when removed.
bool is_k_apex_forest(const SmallGraph& g, int k);

/// Vertex sets of the blocks (maximal 2-connected subgraphs and bridges).
/// Isolated vertices belong to no block.
std::vector<std::uint8_t> block_vertex_sets(const SmallGraph& g);
/// The blocks as induced subgraphs, relabelled.
std::vector<SmallGraph> block_decompose(const SmallGraph& g);
/// A block is allowed in G_k when it is planar or a k-apex forest.
bool is_allowed_block(const SmallGraph& block, int k);
bool is_in_Gk(const SmallGraph& g, int k);

struct CensusRow {
    int n = 0;
    int k = 0;
    BigInt count_A;             ///< 2-connected k-apex forests
    BigInt count_Z;             ///< k-apex forests
    BigInt count_B;             ///< allowed blocks of G_k
    BigInt count_Gk_connected;  ///< connected members of G_k
    BigInt count_Gk;            ///< members of G_k

    friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

/// Exhaustive counts on n labelled vertices. n = 0 gives the empty graph only.
/// The mask range is split across `jobs` threads; the result does not depend on jobs.
CensusRow census(int n, int k, unsigned jobs = 1);

/// Labelled trees on n vertices by number of leaves, by enumerating edge sets.
/// The 1-vertex tree has one leaf.
std::map<int, BigInt> tree_leaf_census(int n);
/// Trees on n vertices in which vertex 0 has degree d: C(n-2, d-1)·(n-1)^{n-d-1}.
BigInt trees_fixed_vertex_degree(int n, int d);
/// Same count by enumerating all labelled trees (n <= 8).
BigInt trees_fixed_vertex_degree_brute_force(int n, int d);

/// Checks that every single-step minor of g (vertex deletion, edge deletion,
/// edge contraction), every edge added between two components, and the disjoint
/// union with K1, K2 and `trials` further small members of G_k all lie in G_k.
/// Partners are drawn from a fixed-seed generator, so the check is reproducible.
bool closure_spot_check(const SmallGraph& g, int k, int trials);

}  // namespace subcrit
