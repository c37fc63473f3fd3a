#include "nsd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace nsd {

BaseBounds base_bounds(int delta, const Profile& profile)
{
    BaseBounds b;
    b.probability = std::min(1.0, profile.sampling_coef / delta_power(delta, 0.5));
    b.slack = profile.slack_coef * delta_power(delta, profile.aux_slack_exponent);
    double expected_max = b.probability * delta;
    b.upper_all = expected_max + b.slack;
    b.upper_outside = expected_max * profile.large_frac + b.slack;
    b.lower_large = expected_max * profile.large_frac - b.slack;
    return b;
}

std::vector<Vertex> base_violations(const SubgraphRef& h, const Classification& cls, const BaseBounds& bounds)
{
    const auto& g = h.host();
    auto deg = h.degrees();
    std::vector<Vertex> bad;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        double d = deg[static_cast<std::size_t>(v)];
        bool ok = d <= bounds.upper_all;
        if (cls.large[static_cast<std::size_t>(v)])
            ok = ok && std::abs(d - bounds.probability * g.degree(v)) <= bounds.slack;
        else
            ok = ok && d <= bounds.upper_outside;
        if (!ok)
            bad.push_back(v);
    }
    return bad;
}

SampledSubgraph sample_base_subgraph(const Graph& g, const Classification& cls, Rng& rng, const Profile& profile)
{
    auto bounds = base_bounds(cls.delta, profile);
    auto large = Classification::members(cls.large);
    if (large.empty())
        return {SubgraphRef(g, {}), 0};
    if (bounds.lower_large <= 0)
        throw InfeasibleProfile("profile '" + profile.name + "' gives a non-positive degree floor "
            + std::to_string(bounds.lower_large) + " for large vertices at delta=" + std::to_string(cls.delta));

    // Edges touching V_L are the random variables; slot maps them to bits.
    std::vector<EdgeId> eligible;
    std::vector<int> slot(static_cast<std::size_t>(g.edge_count()), -1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if (cls.large[static_cast<std::size_t>(ed.u)] || cls.large[static_cast<std::size_t>(ed.v)]) {
            slot[static_cast<std::size_t>(e)] = static_cast<int>(eligible.size());
            eligible.push_back(e);
        }
    }

    using Coins = std::vector<char>;
    std::bernoulli_distribution coin(bounds.probability);
    auto flip = [&](Rng& r) -> char { return bounds.probability >= 1.0 ? 1 : static_cast<char>(coin(r)); };
    auto to_subgraph = [&](const Coins& coins) {
        std::vector<EdgeId> kept;
        for (std::size_t i = 0; i < eligible.size(); ++i)
            if (coins[i])
                kept.push_back(eligible[i]);
        return SubgraphRef(g, std::move(kept));
    };
    auto draw = [&](Rng& r) {
        Coins coins(eligible.size());
        for (auto& c : coins)
            c = flip(r);
        return coins;
    };
    auto violated = [&](const Coins& coins) {
        auto bad = base_violations(to_subgraph(coins), cls, bounds);
        return std::vector<std::size_t>(bad.begin(), bad.end());
    };
    auto redraw = [&](Coins& coins, std::span<const std::size_t> bad, Rng& r) {
        std::vector<bool> again(eligible.size(), false);
        for (auto v : bad)
            for (const auto& inc : g.incident(static_cast<Vertex>(v)))
                if (auto s = slot[static_cast<std::size_t>(inc.edge)]; s >= 0)
                    again[static_cast<std::size_t>(s)] = true;
        for (std::size_t i = 0; i < eligible.size(); ++i)
            if (again[i])
                coins[i] = flip(r);
    };

    auto result = resample(draw, violated, redraw, profile.policy(profile.base_scope, g.vertex_count()), rng);
    return {to_subgraph(result.candidate), result.restarts};
}

TotalColouring recolour_mod_B(TotalColouring c, const SubgraphRef& h, int B, Colour m_prime,
    const Classification& cls)
{
    if (B < 1)
        throw std::invalid_argument("B must be positive");
    const auto& g = h.host();
    auto sums = total_sums(g, c);
    auto in_h = h.edge_mask();
    std::vector<bool> done(static_cast<std::size_t>(g.edge_count()), false);
    std::vector<bool> residue_taken(static_cast<std::size_t>(B));
    auto mod = [B](Sum x) { return ((x % B) + B) % B; };

    for (auto e : h.edges()) {
        const auto& ed = g.edge(e);
        std::fill(residue_taken.begin(), residue_taken.end(), false);
        for (auto end : {ed.u, ed.v})
            for (const auto& inc : g.incident(end))
                if (inc.edge != e && in_h[static_cast<std::size_t>(inc.edge)] && done[static_cast<std::size_t>(inc.edge)])
                    residue_taken[static_cast<std::size_t>(mod(c.edge[static_cast<std::size_t>(inc.edge)]))] = true;

        Colour old = c.edge[static_cast<std::size_t>(e)];
        std::optional<Colour> pick;
        for (Colour col = m_prime + B + 1; col <= m_prime + 2 * static_cast<Colour>(B) && !pick; ++col) {
            if (residue_taken[static_cast<std::size_t>(mod(col))])
                continue;
            bool ok = true;
            for (auto end : {ed.u, ed.v}) {
                auto y = cls.isolated_partner[static_cast<std::size_t>(end)];
                if (y < 0 || y == ed.other(end))
                    continue;
                if (mod(sums[static_cast<std::size_t>(end)] + col - old - sums[static_cast<std::size_t>(y)]) == 0)
                    ok = false;
            }
            if (ok)
                pick = col;
        }
        if (!pick)
            throw StageFailure("recolour_mod_B", "no free residue for edge " + std::to_string(ed.u) + "-"
                    + std::to_string(ed.v) + " with B=" + std::to_string(B));
        sums[static_cast<std::size_t>(ed.u)] += *pick - old;
        sums[static_cast<std::size_t>(ed.v)] += *pick - old;
        c.edge[static_cast<std::size_t>(e)] = *pick;
        done[static_cast<std::size_t>(e)] = true;
    }
    return c;
}

VertexOrdering build_ordering(const SubgraphRef& h)
{
    VertexOrdering order;
    if (h.empty())
        return order;
    const auto& g = h.host();
    auto in_h = h.edge_mask();
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    std::vector<Vertex> nbrs;

    for (const auto& comp : components(h)) {
        Vertex root = g.edge(comp.edges().front()).u;
        for (auto e : comp.edges())
            root = std::min({root, g.edge(e).u, g.edge(e).v});

        std::vector<Vertex> bfs{root};
        seen[static_cast<std::size_t>(root)] = true;
        for (std::size_t head = 0; head < bfs.size(); ++head) {
            nbrs.clear();
            for (const auto& inc : g.incident(bfs[head]))
                if (in_h[static_cast<std::size_t>(inc.edge)] && !seen[static_cast<std::size_t>(inc.neighbour)])
                    nbrs.push_back(inc.neighbour);
            std::sort(nbrs.begin(), nbrs.end());
            for (auto w : nbrs) {
                seen[static_cast<std::size_t>(w)] = true;
                bfs.push_back(w);
            }
        }
        order.component_start.push_back(order.sequence.size());
        order.sequence.insert(order.sequence.end(), bfs.rbegin(), bfs.rend());
    }
    return order;
}

std::pair<Sum, Sum> pair_of(Sum s, Sum B)
{
    if (B < 1)
        throw std::invalid_argument("pair_of needs B >= 1");
    Sum m = s >= 0 ? s / B : -((-s + B - 1) / B); // floor division
    return m % 2 == 0 ? std::pair{s, s + B} : std::pair{s - B, s};
}

bool PairAssignment::contains(Vertex v, Sum s) const
{
    const auto& lo = low.at(static_cast<std::size_t>(v));
    return lo && (s == *lo || s == *lo + B);
}

} // namespace nsd
