#include "nsd/colouring.hpp"
#include "nsd/workbench.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace nsd;

namespace {

TotalColouring edge_colours(const Graph& g, std::vector<Colour> colours)
{
    TotalColouring c(g, Mode::edge);
    c.edge = std::move(colours);
    return c;
}

// Sum over the edge list directly, no adjacency.
Sum naive_sum(const Graph& g, const TotalColouring& c, Vertex v)
{
    Sum s = c.mode == Mode::total ? c.vertex[static_cast<std::size_t>(v)] : 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (g.edge(e).u == v || g.edge(e).v == v)
            s += c.edge[static_cast<std::size_t>(e)];
    return s;
}

} // namespace

TEST_CASE("weighted degree and total sum")
{
    auto k3 = complete_graph(3); // edges 01, 02, 12
    auto c = edge_colours(k3, {1, 2, 3});
    // vertex 2 meets the edges coloured 2 and 3
    CHECK(weighted_degree(k3, c, 2) == naive_sum(k3, c, 2));
    CHECK(weighted_degree(k3, c, 2) == 2 + 3);

    Graph lonely(1);
    CHECK(weighted_degree(lonely, TotalColouring(lonely, Mode::edge), 0) == 0);

    auto p3 = path_graph(3);
    CHECK(weighted_degree(p3, edge_colours(p3, {1, 2}), 1) == 1 + 2);

    auto k2 = complete_graph(2);
    TotalColouring t(k2, Mode::total);
    t.vertex = {1, 2};
    t.edge = {3};
    CHECK(total_sum(k2, t, 0) == 1 + 3);
    CHECK(total_sum(k2, t, 1) == 2 + 3);

    TotalColouring seven(lonely, Mode::total);
    seven.vertex = {7};
    CHECK(total_sum(lonely, seven, 0) == 7);

    CHECK_THROWS_AS((void)weighted_degree(k3, c, 5), ColouringError);
    CHECK_THROWS_AS((void)total_sums(k3, edge_colours(k3, {1})), ColouringError);
}

TEST_CASE("properness")
{
    auto k3 = complete_graph(3);
    CHECK(is_proper(k3, edge_colours(k3, {1, 2, 3})));
    auto p3 = path_graph(3);
    CHECK_FALSE(is_proper(p3, edge_colours(p3, {1, 1})));

    auto k2 = complete_graph(2);
    TotalColouring t(k2, Mode::total);
    t.vertex = {1, 1};
    t.edge = {2};
    CHECK_FALSE(is_proper(k2, t));
    t.vertex = {1, 2};
    t.edge = {2};
    CHECK_FALSE(is_proper(k2, t));
    t.edge = {3};
    CHECK(is_proper(k2, t));
}

TEST_CASE("properness agrees with a pairwise check on random colourings")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = gnp_graph(7, 0.5, rng());
        auto mode = trial % 2 ? Mode::total : Mode::edge;
        TotalColouring c(g, mode);
        for (auto& x : c.edge)
            x = 1 + static_cast<Colour>(rng() % 5);
        if (mode == Mode::total)
            for (auto& x : c.vertex)
                x = 1 + static_cast<Colour>(rng() % 5);
        CHECK(is_proper(g, c) == oracle::naive_proper(g, c));
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            CHECK(total_sum(g, c, v) == naive_sum(g, c, v));
    }
}

TEST_CASE("verifier")
{
    auto c5 = cycle_graph(5); // edges 01 12 23 34 04 get 1..5
    auto good = edge_colours(c5, {1, 2, 3, 4, 5});
    auto sums = total_sums(c5, good);
    for (Vertex v = 0; v < 5; ++v)
        CHECK(sums[static_cast<std::size_t>(v)] == naive_sum(c5, good, v));
    CHECK(sums == std::vector<Sum>{6, 3, 5, 7, 9});
    auto report = verify_nsd(c5, good);
    CHECK(report.pass);
    CHECK(report.max_colour == 5);

    auto c4 = cycle_graph(4);
    auto bad = verify_nsd(c4, edge_colours(c4, {1, 2, 1, 2}));
    CHECK_FALSE(bad.pass);
    CHECK(bad.violations.empty());
    CHECK(bad.conflicts.size() == 4);
    for (const auto& k : bad.conflicts)
        CHECK(k.sum == 3);

    Graph one(1);
    TotalColouring t(one, Mode::total);
    t.vertex = {1};
    CHECK(verify_nsd(one, t).pass);
}

TEST_CASE("verifier enforces colour ranges")
{
    auto p3 = path_graph(3);
    auto zero = edge_colours(p3, {0, 1});
    CHECK_FALSE(verify_nsd(p3, zero).pass);

    auto with_vertex = edge_colours(p3, {1, 2});
    with_vertex.vertex[0] = 4;
    auto r = verify_nsd(p3, with_vertex);
    CHECK_FALSE(r.pass);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == Violation::Kind::colour_range);
}

TEST_CASE("colouring text round trip")
{
    auto g = gnp_graph(9, 0.5, 2);
    for (auto mode : {Mode::edge, Mode::total}) {
        TotalColouring c(g, mode);
        for (std::size_t i = 0; i < c.edge.size(); ++i)
            c.edge[i] = static_cast<Colour>(i + 1);
        if (mode == Mode::total)
            for (std::size_t i = 0; i < c.vertex.size(); ++i)
                c.vertex[i] = static_cast<Colour>(100 + i);
        auto text = write_colouring(g, c);
        CHECK(read_colouring(g, text) == c);
    }
    auto k2 = complete_graph(2);
    CHECK_THROWS_AS((void)read_colouring(k2, "nsd edge n=2 m=1 maxcolour=1\ne 0 1 1\ne 0 1 1\n"), ColouringError);
    CHECK_THROWS_AS((void)read_colouring(k2, "nsd edge n=3 m=1 maxcolour=1\ne 0 1 1\n"), ColouringError);
    CHECK_THROWS_AS((void)read_colouring(k2, "garbage"), ColouringError);
}
