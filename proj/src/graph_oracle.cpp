#include "subcrit/graph_oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace subcrit {
namespace {

void require_vertex_count(int n) {
    if (n < 0 || n > kMaxOracleVertices)
        throw std::invalid_argument("graph oracle: vertex count must lie in [0, 8]");
}

int popcount(std::uint32_t x) { return std::popcount(x); }

// Index of the pair (i, j), i < j, in colex order.
constexpr int pair_index(int i, int j) { return j * (j - 1) / 2 + i; }

}  // namespace

// ---------------------------------------------------------------------------
// SmallGraph

SmallGraph::SmallGraph(int n) : n_(n) { require_vertex_count(n); }

SmallGraph SmallGraph::from_edge_mask(int n, std::uint32_t mask) {
    SmallGraph g(n);
    int bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if ((mask >> bit) & 1U) g.add_edge(i, j);
    if (bit < 32 && (mask >> bit) != 0) throw std::invalid_argument("SmallGraph::from_edge_mask: mask has bits beyond C(n,2)");
    return g;
}

SmallGraph SmallGraph::complete(int n) {
    SmallGraph g(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) g.add_edge(i, j);
    return g;
}

SmallGraph SmallGraph::cycle(int n) {
    if (n < 3) throw std::invalid_argument("SmallGraph::cycle: need n >= 3");
    SmallGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

SmallGraph SmallGraph::path(int n) {
    SmallGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

SmallGraph SmallGraph::complete_bipartite(int a, int b) {
    SmallGraph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = a; j < a + b; ++j) g.add_edge(i, j);
    return g;
}

int SmallGraph::edge_count() const {
    int twice = 0;
    for (int v = 0; v < n_; ++v) twice += popcount(adj_[static_cast<std::size_t>(v)]);
    return twice / 2;
}

std::uint32_t SmallGraph::edge_mask() const {
    std::uint32_t m = 0;
    for (int j = 1; j < n_; ++j)
        for (int i = 0; i < j; ++i)
            if (has_edge(i, j)) m |= 1U << pair_index(i, j);
    return m;
}

void SmallGraph::add_edge(int u, int v) {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("SmallGraph::add_edge: bad endpoints");
    adj_[static_cast<std::size_t>(u)] |= static_cast<std::uint8_t>(1U << v);
    adj_[static_cast<std::size_t>(v)] |= static_cast<std::uint8_t>(1U << u);
}

void SmallGraph::remove_edge(int u, int v) {
    adj_[static_cast<std::size_t>(u)] &= static_cast<std::uint8_t>(~(1U << v));
    adj_[static_cast<std::size_t>(v)] &= static_cast<std::uint8_t>(~(1U << u));
}

SmallGraph SmallGraph::induced(std::uint8_t vertices) const {
    std::array<int, kMaxOracleVertices> label{};
    int m = 0;
    for (int v = 0; v < n_; ++v)
        if ((vertices >> v) & 1U) label[static_cast<std::size_t>(v)] = m++;
    SmallGraph h(m);
    for (int v = 0; v < n_; ++v) {
        if (!((vertices >> v) & 1U)) continue;
        for (int w = v + 1; w < n_; ++w)
            if (((vertices >> w) & 1U) && has_edge(v, w))
                h.add_edge(label[static_cast<std::size_t>(v)], label[static_cast<std::size_t>(w)]);
    }
    return h;
}

SmallGraph SmallGraph::without_vertex(int v) const {
    return induced(static_cast<std::uint8_t>(all_vertices() & ~(1U << v)));
}

SmallGraph SmallGraph::contract(int u, int v) const {
    if (!has_edge(u, v)) throw std::invalid_argument("SmallGraph::contract: not an edge");
    SmallGraph merged = *this;
    for (int w = 0; w < n_; ++w)
        if (w != u && w != v && has_edge(v, w)) merged.add_edge(u, w);
    return merged.without_vertex(v);
}

SmallGraph SmallGraph::disjoint_union(const SmallGraph& other) const {
    SmallGraph g(n_ + other.n_);
    for (int j = 1; j < n_; ++j)
        for (int i = 0; i < j; ++i)
            if (has_edge(i, j)) g.add_edge(i, j);
    for (int j = 1; j < other.n_; ++j)
        for (int i = 0; i < j; ++i)
            if (other.has_edge(i, j)) g.add_edge(n_ + i, n_ + j);
    return g;
}

// ---------------------------------------------------------------------------
// Enumeration

void for_each_labelled_graph(int n, const std::function<void(const SmallGraph&)>& visit) {
    if (n < 1 || n > kMaxOracleVertices) throw std::invalid_argument("for_each_labelled_graph: n must lie in [1, 8]");
    const std::uint64_t total = std::uint64_t{1} << pair_count(n);
    for (std::uint64_t mask = 0; mask < total; ++mask) visit(SmallGraph::from_edge_mask(n, static_cast<std::uint32_t>(mask)));
}

std::vector<SmallGraph> enumerate_labelled_graphs(int n) {
    std::vector<SmallGraph> out;
    for_each_labelled_graph(n, [&](const SmallGraph& g) { out.push_back(g); });
    return out;
}

// ---------------------------------------------------------------------------
// Connectivity and forests

std::uint8_t component_of(const SmallGraph& g, int v, std::uint8_t within) {
    std::uint8_t seen = static_cast<std::uint8_t>(1U << v);
    std::uint8_t frontier = seen;
    while (frontier != 0) {
        std::uint8_t next = 0;
        for (std::uint8_t f = frontier; f != 0; f &= static_cast<std::uint8_t>(f - 1))
            next |= g.neighbours(std::countr_zero(f));
        next &= static_cast<std::uint8_t>(within & ~seen);
        seen |= next;
        frontier = next;
    }
    return seen;
}

int component_count(const SmallGraph& g, std::uint8_t within) {
    int count = 0;
    for (std::uint8_t rest = within; rest != 0;) {
        rest &= static_cast<std::uint8_t>(~component_of(g, std::countr_zero(rest), within));
        ++count;
    }
    return count;
}

bool is_connected(const SmallGraph& g) {
    if (g.n() == 0) return false;
    return component_of(g, 0, g.all_vertices()) == g.all_vertices();
}

bool is_2connected(const SmallGraph& g) {
    if (g.n() < 2 || !is_connected(g)) return false;
    if (g.n() == 2) return true;
    for (int v = 0; v < g.n(); ++v) {
        const auto rest = static_cast<std::uint8_t>(g.all_vertices() & ~(1U << v));
        if (component_of(g, std::countr_zero(rest), rest) != rest) return false;
    }
    return true;
}

bool is_forest(const SmallGraph& g, std::uint8_t within) {
    int twice_edges = 0;
    for (std::uint8_t r = within; r != 0; r &= static_cast<std::uint8_t>(r - 1))
        twice_edges += popcount(static_cast<std::uint8_t>(g.neighbours(std::countr_zero(r)) & within));
    const int vertices = popcount(within);
    if (twice_edges / 2 >= vertices) return false;
    return twice_edges / 2 == vertices - component_count(g, within);
}

bool is_forest(const SmallGraph& g) { return is_forest(g, g.all_vertices()); }

bool is_k_apex_forest(const SmallGraph& g, int k) {
    if (k < 0) throw std::invalid_argument("is_k_apex_forest: k must be >= 0");
    const std::uint32_t all = g.all_vertices();
    if (k >= g.n()) return true;
    for (std::uint32_t removed = 0; removed <= all; ++removed) {
        if (popcount(removed) > k) continue;
        if (is_forest(g, static_cast<std::uint8_t>(all & ~removed))) return true;
    }
    return false;
}

bool is_planar(const SmallGraph& g) {
    const int n = g.n();
    const int m = g.edge_count();
    if (n <= 4) return true;
    if (m > 3 * n - 6) return false;
    if (m <= 8) return true;  // K3,3 has 9 edges and K5 has 10; any subdivision has at least as many

    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                        boost::property<boost::vertex_index_t, int>>;
    Graph bg(static_cast<std::size_t>(n));
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (g.has_edge(i, j)) boost::add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j), bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

// ---------------------------------------------------------------------------
// Blocks

namespace {

struct BlockSearch {
    const SmallGraph& g;
    std::array<int, kMaxOracleVertices> disc{};
    std::array<int, kMaxOracleVertices> low{};
    std::vector<std::pair<int, int>> edges;
    std::vector<std::uint8_t> blocks;
    int time = 0;

    explicit BlockSearch(const SmallGraph& graph) : g(graph) { disc.fill(-1); }

    void visit(int u, int parent) {
        disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = time++;
        for (std::uint8_t nb = g.neighbours(u); nb != 0; nb &= static_cast<std::uint8_t>(nb - 1)) {
            const int v = std::countr_zero(nb);
            const auto su = static_cast<std::size_t>(u), sv = static_cast<std::size_t>(v);
            if (disc[sv] < 0) {
                edges.emplace_back(u, v);
                visit(v, u);
                low[su] = std::min(low[su], low[sv]);
                if (low[sv] >= disc[su]) {
                    std::uint8_t set = 0;
                    for (;;) {
                        const auto [a, b] = edges.back();
                        edges.pop_back();
                        set |= static_cast<std::uint8_t>((1U << a) | (1U << b));
                        if (a == u && b == v) break;
                    }
                    blocks.push_back(set);
                }
            } else if (v != parent && disc[sv] < disc[su]) {
                edges.emplace_back(u, v);
                low[su] = std::min(low[su], disc[sv]);
            }
        }
    }
};

}  // namespace

std::vector<std::uint8_t> block_vertex_sets(const SmallGraph& g) {
    BlockSearch search(g);
    for (int v = 0; v < g.n(); ++v)
        if (search.disc[static_cast<std::size_t>(v)] < 0) search.visit(v, -1);
    std::sort(search.blocks.begin(), search.blocks.end());
    return search.blocks;
}

std::vector<SmallGraph> block_decompose(const SmallGraph& g) {
    std::vector<SmallGraph> out;
    for (const auto set : block_vertex_sets(g)) out.push_back(g.induced(set));
    return out;
}

bool is_allowed_block(const SmallGraph& block, int k) {
    return is_k_apex_forest(block, k) || is_planar(block);
}

bool is_in_Gk(const SmallGraph& g, int k) {
    for (const auto& b : block_decompose(g))
        if (!is_allowed_block(b, k)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Census

namespace {

// Memoises is_allowed_block by (block size, relabelled edge mask).
class BlockVerdictCache {
public:
    explicit BlockVerdictCache(int k) : k_(k) {}

    bool allowed(const SmallGraph& block) {
        const int s = block.n();
        const std::uint32_t mask = block.edge_mask();
        if (s <= 7) {
            auto& table = tables_[static_cast<std::size_t>(s)];
            if (table.empty()) table.assign(std::size_t{1} << pair_count(s), kUnknown);
            auto& slot = table[mask];
            if (slot == kUnknown) slot = is_allowed_block(block, k_) ? 1 : 0;
            return slot == 1;
        }
        auto [it, inserted] = large_.try_emplace(mask, false);
        if (inserted) it->second = is_allowed_block(block, k_);
        return it->second;
    }

private:
    static constexpr std::int8_t kUnknown = -1;
    int k_;
    std::array<std::vector<std::int8_t>, 8> tables_;
    std::unordered_map<std::uint32_t, bool> large_;
};

struct PartialCounts {
    std::uint64_t A = 0, Z = 0, B = 0, connected = 0, all = 0;
};

PartialCounts census_range(int n, int k, std::uint64_t begin, std::uint64_t end) {
    PartialCounts c;
    BlockVerdictCache cache(k);
    for (std::uint64_t mask = begin; mask < end; ++mask) {
        const SmallGraph g = SmallGraph::from_edge_mask(n, static_cast<std::uint32_t>(mask));
        const auto blocks = block_vertex_sets(g);
        bool all_allowed = true;
        for (const auto set : blocks)
            if (!cache.allowed(g.induced(set))) {
                all_allowed = false;
                break;
            }
        const bool connected = is_connected(g);
        const bool two_connected = n >= 2 && blocks.size() == 1 && blocks.front() == g.all_vertices();
        const bool apex = is_k_apex_forest(g, k);
        c.Z += apex;
        c.A += two_connected && apex;
        c.B += two_connected && all_allowed;
        c.all += all_allowed;
        c.connected += connected && all_allowed;
    }
    return c;
}

}  // namespace

CensusRow census(int n, int k, unsigned jobs) {
    require_vertex_count(n);
    if (k < 0) throw std::invalid_argument("census: k must be >= 0");
    CensusRow row;
    row.n = n;
    row.k = k;
    if (n == 0) {
        // Only the empty graph: a forest with no blocks, not connected.
        row.count_Z = 1;
        row.count_Gk = 1;
        return row;
    }

    const std::uint64_t total = std::uint64_t{1} << pair_count(n);
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
    std::vector<PartialCounts> parts(jobs);
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j) {
        const std::uint64_t begin = total * j / jobs, end = total * (j + 1) / jobs;
        workers.emplace_back([&, j, begin, end] { parts[j] = census_range(n, k, begin, end); });
    }
    for (auto& w : workers) w.join();

    PartialCounts sum;
    for (const auto& p : parts) {
        sum.A += p.A;
        sum.Z += p.Z;
        sum.B += p.B;
        sum.connected += p.connected;
        sum.all += p.all;
    }
    auto big = [](std::uint64_t x) { return BigInt(std::to_string(x)); };
    row.count_A = big(sum.A);
    row.count_Z = big(sum.Z);
    row.count_B = big(sum.B);
    row.count_Gk_connected = big(sum.connected);
    row.count_Gk = big(sum.all);
    return row;
}

// ---------------------------------------------------------------------------
// Trees

namespace {

// Calls visit for every labelled tree on n >= 2 vertices: edge sets of size
// n-1 that connect all vertices.
void for_each_labelled_tree(int n, const std::function<void(const SmallGraph&)>& visit) {
    if (n < 2 || n > kMaxOracleVertices) throw std::invalid_argument("tree enumeration: n must lie in [2, 8]");
    const int pairs = pair_count(n);
    const int edges = n - 1;
    std::uint32_t mask = (1U << edges) - 1U;
    const std::uint32_t limit = 1U << pairs;
    while (mask < limit) {
        const SmallGraph g = SmallGraph::from_edge_mask(n, mask);
        if (is_connected(g)) visit(g);
        // next mask with the same popcount (Gosper)
        const std::uint32_t c = mask & (~mask + 1U);
        const std::uint32_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

std::map<int, BigInt> tree_leaf_census(int n) {
    if (n < 1 || n > kMaxOracleVertices) throw std::invalid_argument("tree_leaf_census: n must lie in [1, 8]");
    std::map<int, BigInt> census_by_leaves;
    if (n == 1) {
        census_by_leaves[1] = 1;
        return census_by_leaves;
    }
    std::map<int, std::uint64_t> counts;
    for_each_labelled_tree(n, [&](const SmallGraph& t) {
        int leaves = 0;
        for (int v = 0; v < n; ++v) leaves += popcount(t.neighbours(v)) == 1;
        ++counts[leaves];
    });
    for (const auto& [l, c] : counts) census_by_leaves[l] = BigInt(std::to_string(c));
    return census_by_leaves;
}

BigInt trees_fixed_vertex_degree(int n, int d) {
    if (n < 2 || d < 1 || d > n - 1) throw std::invalid_argument("trees_fixed_vertex_degree: need n >= 2 and 1 <= d <= n-1");
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n - 1), static_cast<unsigned long>(n - d - 1));
    return binomial(static_cast<unsigned long>(n - 2), static_cast<unsigned long>(d - 1)) * p;
}

BigInt trees_fixed_vertex_degree_brute_force(int n, int d) {
    if (n < 2 || d < 1 || d > n - 1) throw std::invalid_argument("trees_fixed_vertex_degree: need n >= 2 and 1 <= d <= n-1");
    std::uint64_t count = 0;
    for_each_labelled_tree(n, [&](const SmallGraph& t) { count += popcount(t.neighbours(0)) == d; });
    return BigInt(std::to_string(count));
}

// ---------------------------------------------------------------------------
// Closure

namespace {

bool cross_edges_stay(const SmallGraph& g, int k) {
    for (int u = 0; u < g.n(); ++u) {
        const std::uint8_t comp = component_of(g, u, g.all_vertices());
        for (int v = u + 1; v < g.n(); ++v) {
            if ((comp >> v) & 1U) continue;
            SmallGraph h = g;
            h.add_edge(u, v);
            if (!is_in_Gk(h, k)) return false;
        }
    }
    return true;
}

}  // namespace

bool closure_spot_check(const SmallGraph& g, int k, int trials) {
    if (!is_in_Gk(g, k)) throw std::invalid_argument("closure_spot_check: g must lie in G_k");
    const int n = g.n();

    for (int v = 0; v < n; ++v)
        if (!is_in_Gk(g.without_vertex(v), k)) return false;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            if (!g.has_edge(u, v)) continue;
            SmallGraph h = g;
            h.remove_edge(u, v);
            if (!is_in_Gk(h, k) || !is_in_Gk(g.contract(u, v), k)) return false;
        }
    if (!cross_edges_stay(g, k)) return false;

    std::vector<SmallGraph> partners;
    if (n + 1 <= kMaxOracleVertices) partners.push_back(SmallGraph(1));
    if (n + 2 <= kMaxOracleVertices) partners.push_back(SmallGraph::complete(2));
    std::mt19937 rng(0x5eedU + g.edge_mask() + static_cast<unsigned>(n));
    const int room = std::min(3, kMaxOracleVertices - n);
    for (int t = 0; t < trials && room >= 1; ++t) {
        const int size = std::uniform_int_distribution<int>(1, room)(rng);
        const std::uint32_t pairs_mask = (1U << pair_count(size)) - 1U;
        const SmallGraph p = SmallGraph::from_edge_mask(size, static_cast<std::uint32_t>(rng()) & pairs_mask);
        if (is_in_Gk(p, k)) partners.push_back(p);
    }
    for (const auto& p : partners) {
        const SmallGraph u = g.disjoint_union(p);
        if (!is_in_Gk(u, k) || !cross_edges_stay(u, k)) return false;
    }
    return true;
}

}  // namespace subcrit
