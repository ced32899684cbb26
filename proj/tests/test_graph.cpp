#include <doctest.h>

#include "support.hpp"

using namespace wsbn;
using namespace wsbn::testing;

namespace {

Graph permuted(const Graph& g, const std::vector<std::size_t>& p) {
    Graph out(g.size());
    for (const auto& [u, v] : g.edges()) out.add_edge(p[u], p[v]);
    return out;
}

bool check_injection(const LabelledGraph<VassConfig>& small, const LabelledGraph<VassConfig>& big,
                     const std::vector<std::size_t>& h) {
    std::set<std::size_t> image(h.begin(), h.end());
    if (image.size() != h.size()) return false;
    for (std::size_t a = 0; a < h.size(); ++a) {
        if (!vass_leq(small.labels[a], big.labels[h[a]])) return false;
        for (std::size_t b = a + 1; b < h.size(); ++b) {
            if (small.shape.has_edge(a, b) != big.shape.has_edge(h[a], h[b])) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("graph constructors") {
    CHECK(Graph::complete(4).edge_count() == 6);
    CHECK(Graph::path(4).edge_count() == 3);
    CHECK(Graph::cycle(5).edge_count() == 5);
    const Graph s = Graph::star(3);
    CHECK(s.size() == 4);
    CHECK(s.degree(0) == 3);
    CHECK(Graph::complete(3).is_complete());
    CHECK_FALSE(Graph::path(3).is_complete());
    Graph g(3);
    g.add_edge(0, 2);
    CHECK(g.has_edge(2, 0));
    g.remove_edge(2, 0);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("graph_embeds agrees with brute-force injections") {
    Rng rng(41);
    int positives = 0;
    for (int round = 0; round < 400; ++round) {
        const auto small = random_labelled(rng, pick(rng, 0, 4), 2, 1, 0.5);
        const auto big = random_labelled(rng, pick(rng, 1, 7), 2, 2, 0.5);
        const auto h = graph_embeds(small, big, vass_leq);
        CHECK(h.has_value() == brute_force_embeds(small, big, vass_leq));
        if (h) {
            ++positives;
            CHECK(check_injection(small, big, *h));
        }
    }
    CHECK(positives > 40);
}

TEST_CASE("induced subgraphs of a graph embed into it") {
    Rng rng(42);
    for (int round = 0; round < 100; ++round) {
        const auto big = random_labelled(rng, pick(rng, 1, 7));
        std::vector<std::size_t> keep;
        for (std::size_t v = 0; v < big.size(); ++v) {
            if (pick(rng, 0, 1) == 1) keep.push_back(v);
        }
        LabelledGraph<VassConfig> small{Graph(keep.size()), {}};
        for (std::size_t i = 0; i < keep.size(); ++i) {
            small.labels.push_back(big.labels[keep[i]]);
            for (std::size_t j = i + 1; j < keep.size(); ++j) {
                if (big.shape.has_edge(keep[i], keep[j])) small.shape.add_edge(i, j);
            }
        }
        CHECK(graph_embeds(small, big, vass_leq).has_value());
    }
}

TEST_CASE("a path does not embed into a triangle") {
    LabelledGraph<VassConfig> p{Graph::path(3), {{0, {}}, {0, {}}, {0, {}}}};
    LabelledGraph<VassConfig> t{Graph::complete(3), {{0, {}}, {0, {}}, {0, {}}}};
    CHECK_FALSE(graph_embeds(p, t, vass_leq).has_value());
    CHECK_FALSE(graph_embeds(t, p, vass_leq).has_value());
    LabelledGraph<VassConfig> c4{Graph::cycle(4), {{0, {}}, {0, {}}, {0, {}}, {0, {}}}};
    CHECK(graph_embeds(p, c4, vass_leq).has_value());
}

TEST_CASE("multiset_embeds agrees with brute force") {
    Rng rng(43);
    for (int round = 0; round < 300; ++round) {
        std::vector<VassConfig> a;
        std::vector<VassConfig> b;
        for (std::size_t i = 0; i < pick(rng, 0, 6); ++i) a.push_back({StateId(pick(rng, 0, 1)), {std::int64_t(pick(rng, 0, 2))}});
        for (std::size_t i = 0; i < pick(rng, 0, 6); ++i) b.push_back({StateId(pick(rng, 0, 1)), {std::int64_t(pick(rng, 0, 2))}});
        CHECK(multiset_embeds(a, b, vass_leq) == brute_force_multiset(a, b, vass_leq));
    }
}

TEST_CASE("longest simple path and diameter") {
    Rng rng(44);
    for (int round = 0; round < 200; ++round) {
        const Graph g = random_graph(rng, pick(rng, 1, 7), 0.45);
        CHECK(longest_simple_path_length(g) == brute_force_longest_path(g));
        CHECK(diameter(g) == floyd_diameter(g));
        CHECK(is_connected(g) == (floyd_diameter(g) != kInfiniteDiameter));
    }
    CHECK(longest_simple_path_length(Graph::star(5)) == 2);
    CHECK(diameter(Graph::cycle(5)) == 2);
    CHECK(max_degree(Graph::star(5)) == 5);
}

TEST_CASE("class membership") {
    CHECK(belongs(Graph::star(6), TopologyClass::path_bounded(2)));
    CHECK_FALSE(belongs(Graph::path(4), TopologyClass::path_bounded(2)));
    CHECK(belongs(Graph::complete(5), TopologyClass::clique()));
    CHECK_FALSE(belongs(Graph::path(3), TopologyClass::clique()));
    CHECK(belongs(Graph::cycle(5), TopologyClass::diam_deg(2, 2)));
    CHECK_FALSE(belongs(Graph::cycle(6), TopologyClass::diam_deg(2, 2)));
    CHECK_FALSE(belongs(Graph(2), TopologyClass::diam_deg(2, 2)));
}

TEST_CASE("extensions of a graph") {
    // A single edge has four one-vertex extensions; the fresh vertex adjacent
    // to both ends closes a triangle, whose longest path has two edges.
    const Graph e = Graph::path(2);
    const auto ext = enumerate_extensions(e, TopologyClass::path_bounded(2));
    CHECK(ext.size() == 4);
    for (const Graph& g : ext) {
        CHECK(g.size() == 3);
        CHECK(g.has_edge(0, 1));
    }
    CHECK(enumerate_extensions(Graph::path(3), TopologyClass::path_bounded(2)).size() == 2);
    const auto clique = enumerate_extensions(Graph::complete(3), TopologyClass::clique());
    REQUIRE(clique.size() == 1);
    CHECK(clique[0].is_complete());
    CHECK_THROWS_AS(enumerate_extensions(Graph::path(4), TopologyClass::path_bounded(2)), ClassViolation);
    CHECK(enumerate_extensions(Graph::path(2), TopologyClass::diam_deg(2, 2)).empty());
}

TEST_CASE("canonical codes are isomorphism invariant") {
    Rng rng(45);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = pick(rng, 1, 7);
        const Graph g = random_graph(rng, n, 0.5);
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        const Graph h = permuted(g, p);
        CHECK(canonical_code(g) == canonical_code(h));
        CHECK(canonical_graph(g) == canonical_graph(h));
        const Graph other = random_graph(rng, n, 0.5);
        CHECK((canonical_code(g) == canonical_code(other)) ==
              (brute_force_canonical(g) == brute_force_canonical(other)));
    }
}

TEST_CASE("diameter and degree enumeration") {
    auto sizes = [](const std::vector<Graph>& gs) {
        std::vector<std::size_t> out;
        for (const Graph& g : gs) out.push_back(g.size());
        return out;
    };
    const auto d1 = enumerate_diam_deg_graphs(1, 2, 4);
    CHECK(sizes(d1) == std::vector<std::size_t>{1, 2, 3});
    for (const Graph& g : d1) CHECK(g.is_complete());
    CHECK(sizes(enumerate_diam_deg_graphs(2, 1, 3)) == std::vector<std::size_t>{1, 2});
    const auto d22 = enumerate_diam_deg_graphs(2, 2, 6);
    CHECK(d22.back().size() == 5);
    CHECK(d22.size() == brute_force_diam_deg(2, 2, 6).size());
    CHECK_THROWS_AS(enumerate_diam_deg_graphs(2, 3, 9), ResourceExhausted);
}

TEST_CASE("class graph enumeration matches brute force") {
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto cls = TopologyClass::path_bounded(2);
        std::set<std::uint64_t> expected;
        std::vector<Edge> slots;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) slots.emplace_back(u, v);
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
            Graph g(n);
            for (std::size_t i = 0; i < slots.size(); ++i) {
                if ((mask >> i) & 1U) g.add_edge(slots[i].first, slots[i].second);
            }
            if (brute_force_longest_path(g) <= 2) expected.insert(brute_force_canonical(g));
        }
        CHECK(enumerate_class_graphs(n, cls).size() == expected.size());
        CHECK(enumerate_class_graphs(n, TopologyClass::clique()).size() == 1);
    }
}

TEST_CASE("order bounds") {
    CHECK(moore_bound(2, 2) == 5);
    CHECK(moore_bound(2, 3) == 10);
    CHECK(moore_bound(1, 4) == 5);
    CHECK_FALSE(alternative_order_bound(2, 3).has_value());
    REQUIRE(alternative_order_bound(3, 2).has_value());
    CHECK(*alternative_order_bound(3, 2) == doctest::Approx(10.0));
}

TEST_CASE("graph examples") {
    const LabelledGraph<VassConfig> one{Graph(1), {{0, {0}}}};
    const LabelledGraph<VassConfig> host{Graph::path(3), {{1, {0}}, {0, {3}}, {1, {1}}}};
    CHECK(graph_embeds(one, host, vass_leq).has_value());
    const LabelledGraph<VassConfig> linked{Graph::path(2), {{0, {0}}, {0, {0}}}};
    const LabelledGraph<VassConfig> apart{Graph(2), {{0, {0}}, {0, {0}}}};
    CHECK_FALSE(graph_embeds(linked, apart, vass_leq).has_value());

    CHECK(longest_simple_path_length(Graph::star(4)) == 2);
    CHECK(longest_simple_path_length(Graph(1)) == 0);
    CHECK(diameter(Graph::cycle(5)) == 2);
    CHECK(max_degree(Graph::cycle(5)) == 2);
    CHECK(diameter(Graph::star(6)) == 2);
    CHECK(max_degree(Graph::star(6)) == 6);

    const std::vector<VassConfig> small{{1, {1}}};
    const std::vector<VassConfig> big{{1, {2}}, {0, {0}}};
    CHECK(multiset_embeds(small, big, vass_leq));
    const std::vector<VassConfig> twice{{1, {1}}, {1, {1}}};
    CHECK_FALSE(multiset_embeds(twice, small, vass_leq));

    const auto k2 = enumerate_extensions(Graph(1), TopologyClass::clique());
    REQUIRE(k2.size() == 1);
    CHECK(k2[0] == Graph::complete(2));
    // Two isolated vertices: the fresh vertex may touch at most one of them.
    CHECK(enumerate_extensions(Graph(2), TopologyClass::path_bounded(1)).size() == 3);
    for (const Graph& g : enumerate_extensions(Graph::path(3), TopologyClass::path_bounded(2))) {
        CHECK(longest_simple_path_length(g) <= 2);
    }
}
