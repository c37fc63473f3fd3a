#pragma once

#include "nsd/workbench.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace fixture {

// A dense random regular core with three kinds of low-degree attachments:
// medium vertices wired into the core and to each other, adjacent pairs
// that form isolated edges among the small vertices, and pendant paths of
// three small vertices. Δ comes from the core (about d).
inline nsd::Graph mixed_degree_graph(std::uint64_t seed, int core = 400, int d = 100)
{
    using nsd::Vertex;
    std::mt19937_64 rng(seed);
    auto base = nsd::random_regular_graph(core, d, seed);
    std::set<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : base.edges())
        edges.emplace(e.u, e.v);
    auto add = [&](Vertex a, Vertex b) { edges.emplace(std::min(a, b), std::max(a, b)); };
    auto pick_core = [&](int count) {
        std::vector<Vertex> all(static_cast<std::size_t>(core));
        for (int i = 0; i < core; ++i)
            all[static_cast<std::size_t>(i)] = i;
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(static_cast<std::size_t>(count));
        return all;
    };
    auto roll = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };

    Vertex n = core;
    for (int i = 0; i < 150; ++i) {
        Vertex v = n++;
        for (auto u : pick_core(roll(8, 14)))
            add(v, u);
        for (int j = 0; j < std::min(i, roll(3, 8)); ++j)
            add(v, core + static_cast<Vertex>(rng() % static_cast<std::uint64_t>(i)));
    }
    for (int i = 0; i < 60; ++i) {
        Vertex x = n++, y = n++;
        add(x, y);
        for (auto u : pick_core(roll(1, 6)))
            add(x, u);
        for (auto u : pick_core(roll(1, 6)))
            add(y, u);
    }
    for (int i = 0; i < 40; ++i) {
        Vertex a = n++, b = n++, c = n++;
        add(a, b);
        add(b, c);
        add(a, static_cast<Vertex>(rng() % static_cast<std::uint64_t>(core)));
        add(c, static_cast<Vertex>(rng() % static_cast<std::uint64_t>(core)));
    }
    std::vector<std::pair<Vertex, Vertex>> list(edges.begin(), edges.end());
    return nsd::Graph(n, list);
}

} // namespace fixture
