#include "doctest.h"
#include "helpers.hpp"
#include "subcrit/graph_oracle.hpp"

using namespace subcrit;
using namespace subcrit::testing;

namespace {

SmallGraph edges(int n, std::initializer_list<std::pair<int, int>> es) {
    SmallGraph g(n);
    for (auto [u, v] : es) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("enumeration sizes") {
    CHECK(enumerate_labelled_graphs(1).size() == 1);
    CHECK(enumerate_labelled_graphs(3).size() == 8);
    CHECK(enumerate_labelled_graphs(5).size() == 1024);
    const auto all = enumerate_labelled_graphs(4);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].edge_mask() == i);
    CHECK_THROWS(enumerate_labelled_graphs(9));
}

TEST_CASE("2-connectivity") {
    CHECK(is_2connected(SmallGraph::complete(2)));
    CHECK_FALSE(is_2connected(SmallGraph::path(3)));
    CHECK(is_2connected(SmallGraph::cycle(4)));
    CHECK_FALSE(is_2connected(SmallGraph(1)));
    CHECK_FALSE(is_2connected(SmallGraph(2)));
}

TEST_CASE("planarity") {
    CHECK_FALSE(is_planar(SmallGraph::complete(5)));
    CHECK_FALSE(is_planar(SmallGraph::complete_bipartite(3, 3)));
    for (int n = 1; n <= 4; ++n)
        for (const auto& g : enumerate_labelled_graphs(n)) CHECK(is_planar(g));
    int planar5 = 0;
    for_each_labelled_graph(5, [&](const SmallGraph& g) { planar5 += is_planar(g); });
    CHECK(planar5 == 1023);
    // K_{3,3} and K5 minus an edge are planar; a subdivided K_{3,3} is not.
    auto k33 = SmallGraph::complete_bipartite(3, 3);
    k33.remove_edge(0, 3);
    CHECK(is_planar(k33));
    auto k5 = SmallGraph::complete(5);
    k5.remove_edge(0, 1);
    CHECK(is_planar(k5));
    auto sub = SmallGraph::complete_bipartite(3, 3).disjoint_union(SmallGraph(1));
    sub.remove_edge(0, 3);
    sub.add_edge(0, 6);
    sub.add_edge(6, 3);
    CHECK_FALSE(is_planar(sub));
}

TEST_CASE("k-apex forests") {
    for (const auto& g : enumerate_labelled_graphs(5))
        if (is_forest(g)) CHECK(is_k_apex_forest(g, 0));
    CHECK_FALSE(is_k_apex_forest(SmallGraph::complete(4), 1));
    CHECK(is_k_apex_forest(SmallGraph::complete(4), 2));
    CHECK(is_k_apex_forest(SmallGraph::cycle(4), 1));
    CHECK_FALSE(is_k_apex_forest(SmallGraph::cycle(4), 0));
}

TEST_CASE("block decomposition") {
    const auto bowtie = edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
    const auto blocks = block_decompose(bowtie);
    REQUIRE(blocks.size() == 2);
    for (const auto& b : blocks) CHECK(b == SmallGraph::complete(3));
    CHECK(block_decompose(SmallGraph(3)).empty());

    for (int n = 2; n <= 6; ++n)
        for_each_labelled_graph(n, [&](const SmallGraph& g) {
            if (!is_connected(g)) return;
            int sum = 0;
            for (const auto& b : block_decompose(g)) sum += b.n() - 1;
            CHECK(sum == n - 1);
        });
}

TEST_CASE("membership in G_k") {
    for_each_labelled_graph(6, [](const SmallGraph& g) {
        if (is_planar(g)) CHECK(is_in_Gk(g, 1));
    });
    CHECK(is_in_Gk(SmallGraph(1), 0));
    CHECK(is_in_Gk(SmallGraph::complete(5), 3));
    CHECK_FALSE(is_in_Gk(SmallGraph::complete(5), 2));
    CHECK(is_in_Gk(SmallGraph::complete_bipartite(3, 3), 2));
    CHECK_FALSE(is_in_Gk(SmallGraph::complete_bipartite(3, 3), 1));
    CHECK(is_in_Gk(SmallGraph::complete(5).disjoint_union(SmallGraph::complete(2)), 3));
}

TEST_CASE("census spot values") {
    CHECK(census(3, 1).count_A == 1);
    CHECK(census(4, 1).count_A == 9);
    CHECK(census(3, 0).count_Z == 7);
    CHECK(census(0, 1).count_Gk == 1);
    const auto r = census(6, 1);
    CHECK(r.count_A <= r.count_B);
    CHECK(r.count_B <= r.count_Gk);
    CHECK(r.count_A <= r.count_Z);
    CHECK(r.count_Gk == 32071);
}

TEST_CASE("parallel census equals sequential census") {
    for (int k : {1, 2})
        for (int n : {5, 6}) CHECK(census(n, k, 1) == census(n, k, 3));
}

TEST_CASE("allowed blocks counted directly") {
    for (int k : {1, 2}) {
        BigInt blocks = 0;
        for_each_labelled_graph(6, [&](const SmallGraph& g) {
            blocks += is_2connected(g) && (is_planar(g) || is_k_apex_forest(g, k));
        });
        CHECK(census(6, k).count_B == blocks);
    }
}

TEST_CASE("trees with a fixed vertex degree") {
    CHECK(trees_fixed_vertex_degree(4, 1) == 9);
    for (int n = 2; n <= 8; ++n) {
        BigInt row = 0;
        for (int d = 1; d <= n - 1; ++d) {
            CHECK(trees_fixed_vertex_degree(n, d) == trees_fixed_vertex_degree_brute_force(n, d));
            row += trees_fixed_vertex_degree(n, d);
        }
        CHECK(row == ipow(n, static_cast<unsigned long>(n - 2)));
    }
    CHECK_THROWS(trees_fixed_vertex_degree(4, 0));
    CHECK_THROWS(trees_fixed_vertex_degree(4, 4));
}

TEST_CASE("closure spot checks") {
    CHECK(closure_spot_check(SmallGraph::complete(4), 2, 5));
    const auto two_triangles = SmallGraph::complete(3).disjoint_union(SmallGraph::complete(3));
    auto joined = two_triangles;
    joined.add_edge(0, 3);
    CHECK(is_in_Gk(joined, 1));
    CHECK(closure_spot_check(two_triangles, 1, 5));
    CHECK_THROWS(closure_spot_check(SmallGraph::complete(5), 1, 1));
}
