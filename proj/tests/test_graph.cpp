#include "nsd/graph.hpp"
#include "nsd/workbench.hpp"

#include <doctest.h>

#include <random>

using namespace nsd;

namespace {

// Straight bit packing from the format definition, for n ≤ 62.
std::string reference_graph6(int n, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<int> bits;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            bool on = false;
            for (auto [a, b] : edges)
                on = on || (a == u && b == v) || (a == v && b == u);
            bits.push_back(on ? 1 : 0);
        }
    while (bits.size() % 6)
        bits.push_back(0);
    std::string out(1, static_cast<char>(63 + n));
    for (std::size_t i = 0; i < bits.size(); i += 6) {
        int x = 0;
        for (int k = 0; k < 6; ++k)
            x = x * 2 + bits[i + static_cast<std::size_t>(k)];
        out.push_back(static_cast<char>(63 + x));
    }
    return out;
}

SubgraphRef all_of(const Graph& g) { return SubgraphRef::whole(g); }

} // namespace

TEST_CASE("construction rejects loops, repeats and bad ids")
{
    using E = std::vector<std::pair<Vertex, Vertex>>;
    CHECK_THROWS_AS(Graph(3, E{{0, 0}}), GraphError);
    CHECK_THROWS_AS(Graph(3, E{{0, 1}, {1, 0}}), GraphError);
    CHECK_THROWS_AS(Graph(3, E{{0, 3}}), GraphError);
    CHECK_THROWS_AS(Graph(-1), GraphError);

    Graph g(4, E{{2, 1}, {0, 3}});
    CHECK(g.edge(0).u == 1);
    CHECK(g.edge(0).v == 2);
    CHECK(g.find_edge(3, 0) == 1);
    CHECK_FALSE(g.adjacent(0, 1));
}

TEST_CASE("graph6 decoding")
{
    auto k2 = parse_graph6("A_");
    CHECK(k2.vertex_count() == 2);
    CHECK(k2.edge_count() == 1);
    CHECK(reference_graph6(2, {{0, 1}}) == "A_");

    CHECK(parse_graph6(">>graph6<<A_") == k2);
    CHECK_THROWS_AS(parse_graph6("A"), ParseError);
    CHECK_THROWS_AS(parse_graph6("A_~"), ParseError);
    CHECK_THROWS_AS(parse_graph6("A!"), ParseError);
}

TEST_CASE("graph6 agrees with the reference packing on random graphs")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(rng() % 62);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 4 == 0)
                    edges.emplace_back(u, v);
        Graph g(n, edges);
        auto code = reference_graph6(n, edges);
        CHECK(to_graph6(g) == code);
        CHECK(parse_graph6(code) == g);
    }
}

TEST_CASE("graph6 extended size form")
{
    auto g = cycle_graph(100);
    auto code = to_graph6(g);
    CHECK(code[0] == '~');
    CHECK(parse_graph6(code) == g);
}

TEST_CASE("edge lists")
{
    auto empty = parse_edge_list("", 1);
    CHECK(empty.vertex_count() == 1);
    CHECK(empty.edge_count() == 0);

    auto p3 = parse_edge_list("0 1\n1 2");
    CHECK(p3.vertex_count() == 3);
    CHECK(p3.edge_count() == 2);
    CHECK(p3.degree(1) == 2);

    auto commented = parse_edge_list("# header\n\n0 1  # trailing\n");
    CHECK(commented.edge_count() == 1);

    CHECK_THROWS_AS(parse_edge_list("0 0"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 1\n1 0"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 5", 3), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 x"), ParseError);

    auto g = random_regular_graph(30, 5, 3);
    CHECK(parse_edge_list(to_edge_list(g)) == g);
    CHECK(to_edge_list(parse_edge_list(to_edge_list(g))) == to_edge_list(g));
}

TEST_CASE("max degree")
{
    CHECK(max_degree(complete_graph(3)) == 2);
    CHECK(max_degree(star_graph(100)) == 100);
    CHECK(max_degree(Graph(5)) == 0);
}

TEST_CASE("degree sum is twice the edge count")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = gnp_graph(40, 0.2, seed);
        long total = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            total += g.degree(v);
        CHECK(total == 2L * g.edge_count());
    }
}

TEST_CASE("isolated edges")
{
    auto k2 = complete_graph(2);
    CHECK(isolated_edges(all_of(k2)) == std::vector<EdgeId>{0});
    CHECK(isolated_edges(all_of(path_graph(3))).empty());

    std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}, {2, 3}, {3, 4}};
    Graph mixed(5, edges);
    CHECK(isolated_edges(all_of(mixed)) == std::vector<EdgeId>{0});

    // Inside a subgraph only the subgraph degrees count.
    auto p4 = path_graph(4);
    CHECK(isolated_edges(SubgraphRef(p4, {0, 2})) == std::vector<EdgeId>{0, 2});
}

TEST_CASE("components")
{
    CHECK(components(all_of(path_graph(6))).size() == 1);

    std::vector<std::pair<Vertex, Vertex>> edges{{2, 3}, {0, 1}};
    Graph two(4, edges);
    auto parts = components(all_of(two));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].edges() == std::vector<EdgeId>{1}); // holds vertex 0
    CHECK(parts[1].edges() == std::vector<EdgeId>{0});

    CHECK(components(SubgraphRef(two, {})).empty());
}

TEST_CASE("components partition the edge set")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = gnp_graph(30, 0.06, seed);
        std::vector<int> owner(static_cast<std::size_t>(g.edge_count()), -1);
        auto parts = components(all_of(g));
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (auto e : parts[i].edges()) {
                CHECK(owner[static_cast<std::size_t>(e)] == -1);
                owner[static_cast<std::size_t>(e)] = static_cast<int>(i);
            }
        for (auto o : owner)
            CHECK(o >= 0);
        // no vertex is shared between parts
        std::vector<int> seen(static_cast<std::size_t>(g.vertex_count()), -1);
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (auto v : parts[i].vertices()) {
                CHECK(seen[static_cast<std::size_t>(v)] == -1);
                seen[static_cast<std::size_t>(v)] = static_cast<int>(i);
            }
    }
}

TEST_CASE("induced subgraph and subgraph validation")
{
    auto k4 = complete_graph(4);
    auto tri = SubgraphRef::induced(k4, {true, true, true, false});
    CHECK(tri.size() == 3);
    CHECK(tri.vertices() == std::vector<Vertex>{0, 1, 2});
    CHECK(tri.degrees() == std::vector<int>{2, 2, 2, 0});
    CHECK_THROWS(SubgraphRef(k4, {99}));
}
