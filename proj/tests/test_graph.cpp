#include <catch2/catch_amalgamated.hpp>

#include "coxpander/graph.hpp"

using namespace coxpander;

namespace {

Graph petersen() {
    Graph g = Graph::empty(10);
    for (uint32_t i = 0; i < 5; ++i) {
        g.add_edge_raw(i, (i + 1) % 5);
        g.add_edge_raw(i, i + 5);
        g.add_edge_raw(i + 5, (i + 2) % 5 + 5);
    }
    g.finish();
    return g;
}

Graph relabel(const Graph& g, uint64_t seed) {
    std::vector<uint32_t> perm(g.size());
    for (uint32_t i = 0; i < g.size(); ++i) perm[i] = i;
    uint64_t s = seed;
    for (uint32_t i = g.size(); i > 1; --i) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        std::swap(perm[i - 1], perm[s % i]);
    }
    Graph out = Graph::empty(g.size());
    for (uint32_t v = 0; v < g.size(); ++v)
        for (uint32_t u : g.adj[v])
            if (u > v) out.add_edge_raw(perm[v], perm[u]);
    out.finish();
    return out;
}

}  // namespace

TEST_CASE("edge list round trip") {
    Graph g = petersen();
    Graph h = graph_from_edge_list(graph_to_edge_list(g));
    REQUIRE(h.size() == g.size());
    for (uint32_t v = 0; v < g.size(); ++v) CHECK(h.adj[v] == g.adj[v]);
    // isolated vertices survive via the header
    Graph iso = Graph::empty(4);
    iso.add_edge_raw(0, 1);
    iso.finish();
    Graph iso2 = graph_from_edge_list(graph_to_edge_list(iso));
    CHECK(iso2.size() == 4);
}

TEST_CASE("connectivity and bipartiteness") {
    CHECK(is_connected(Graph::cycle(7)));
    CHECK_FALSE(is_bipartite(Graph::cycle(7)));
    CHECK(is_bipartite(Graph::cycle(8)));
    Graph two = Graph::empty(4);
    two.add_edge_raw(0, 1);
    two.add_edge_raw(2, 3);
    two.finish();
    CHECK_FALSE(is_connected(two));
    CHECK(connected_components(two).size() == 2);
}

TEST_CASE("spheres around cliques") {
    Graph k5 = Graph::complete(5);
    CHECK(sphere_around(k5, {0}).size() == 4);
    CHECK(sphere_around(k5, {0, 1}).size() == 3);
    Graph c6 = Graph::cycle(6);
    CHECK(sphere_around(c6, {0}) == std::vector<uint32_t>{1, 5});
    CHECK(sphere_around(c6, {0, 1}).empty());
}

TEST_CASE("isomorphism checks") {
    Graph g = petersen();
    CHECK(isomorphic(g, relabel(g, 0xabcdef)));
    CHECK_FALSE(isomorphic(g, Graph::cycle(10)));
    CHECK(isomorphic(Graph::complete(6), relabel(Graph::complete(6), 5)));
    Graph c9 = Graph::cycle(9);
    CHECK_FALSE(isomorphic(c9, Graph::complete(4)));
}

TEST_CASE("regularity of small graphs") {
    // complete graph K5: (4,3,2,1,0), all levels connected until the end
    auto r = regularity_vector(Graph::complete(5), 16, false);
    CHECK(r.degrees == std::vector<uint64_t>{4, 3, 2, 1, 0});
    CHECK(r.stop == RegularityStop::ZeroDegree);

    // C6: (2,0) and vertex spheres are disconnected pairs
    auto rc = regularity_vector(Graph::cycle(6), 16, false);
    CHECK(rc.degrees == std::vector<uint64_t>{2, 0});
    CHECK(rc.connected == std::vector<bool>{true, false});

    // transitive mode agrees on vertex-transitive graphs
    auto rp = regularity_vector(petersen(), 16, true);
    auto rp2 = regularity_vector(petersen(), 16, false);
    CHECK(rp.degrees == rp2.degrees);
    CHECK(rp.degrees == std::vector<uint64_t>{3, 0});

    // an irregular graph reports a witness instead of a vector
    Graph path3 = Graph::empty(3);
    path3.add_edge_raw(0, 1);
    path3.add_edge_raw(1, 2);
    path3.finish();
    auto ri = regularity_vector(path3, 16, false);
    CHECK(ri.stop == RegularityStop::IrregularSphere);
    CHECK(ri.witness_level == 0);
    CHECK(ri.degrees.empty());
}

TEST_CASE("rook graph K3 x K4 stops without a trailing zero") {
    // Cartesian-product rook graph: vertex spheres are K2 + K3, irregular
    Graph g = Graph::empty(12);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 4; ++y)
            for (int x2 = 0; x2 < 3; ++x2)
                for (int y2 = 0; y2 < 4; ++y2) {
                    int a = x * 4 + y, b = x2 * 4 + y2;
                    if (a < b && ((x == x2) != (y == y2))) g.add_edge_raw(a, b);
                }
    g.finish();
    auto r = regularity_vector(g, 16, false);
    CHECK(r.degrees == std::vector<uint64_t>{5});
    CHECK(r.stop == RegularityStop::IrregularSphere);
    CHECK(r.witness_level == 1);
}

TEST_CASE("iwalk graphs") {
    Graph k4 = Graph::complete(4);
    CHECK(isomorphic(iwalk_graph(k4, 0), k4));
    // octahedron: edges of each triangle pairwise adjacent; 12 edges, 4-regular
    Graph oct = Graph::empty(6);
    for (uint32_t i = 0; i < 6; ++i)
        for (uint32_t j = i + 1; j < 6; ++j)
            if (j != i + 3 || i >= 3) {
                if ((j - i) != 3) oct.add_edge_raw(i, j);
            }
    oct.finish();
    REQUIRE(oct.edge_count() == 12);
    Graph w1 = iwalk_graph(oct, 1);
    CHECK(w1.size() == 12);
    for (uint32_t v = 0; v < w1.size(); ++v) CHECK(w1.adj[v].size() == 4);
    CHECK(is_connected(w1));
}
