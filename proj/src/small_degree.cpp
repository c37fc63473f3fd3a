#include "nsd/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace nsd {

std::vector<Vertex> Classification::members(const std::vector<bool>& mask)
{
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < mask.size(); ++v)
        if (mask[v])
            out.push_back(static_cast<Vertex>(v));
    return out;
}

Classification classify(const Graph& g, const Profile& profile)
{
    Classification cls;
    cls.delta = max_degree(g);
    if (cls.delta < profile.min_delta)
        throw DeltaTooSmall(cls.delta, profile.min_delta);

    auto n = static_cast<std::size_t>(g.vertex_count());
    double delta = cls.delta;
    double medium_floor = delta_power(cls.delta, profile.medium_exponent) + 1.0;
    cls.small.assign(n, false);
    cls.medium.assign(n, false);
    cls.large.assign(n, false);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        double d = g.degree(v);
        auto i = static_cast<std::size_t>(v);
        cls.small[i] = d <= delta * profile.small_frac;
        cls.medium[i] = cls.small[i] && d >= medium_floor;
        cls.large[i] = d >= delta * profile.large_frac;
    }
    cls.small_graph = SubgraphRef::induced(g, cls.small);
    cls.isolated = isolated_edges(cls.small_graph);
    cls.isolated_partner.assign(n, -1);
    for (auto e : cls.isolated) {
        const auto& ed = g.edge(e);
        cls.isolated_partner[static_cast<std::size_t>(ed.u)] = ed.v;
        cls.isolated_partner[static_cast<std::size_t>(ed.v)] = ed.u;
    }
    return cls;
}

double aux_degree_bound(int delta, const Profile& profile)
{
    return delta_power(delta, profile.medium_exponent) + delta_power(delta, profile.aux_slack_exponent) + 1.0;
}

SampledSubgraph sample_aux_graph(const Graph& g, const Classification& cls, Rng& rng, const Profile& profile)
{
    auto medium = Classification::members(cls.medium);
    if (medium.empty())
        return {SubgraphRef(g, {}), 0};

    std::vector<bool> in_isolated(static_cast<std::size_t>(g.edge_count()), false);
    for (auto e : cls.isolated)
        in_isolated[static_cast<std::size_t>(e)] = true;

    // Candidate edges per medium vertex, and the slot of each medium vertex.
    std::vector<std::vector<EdgeId>> options(medium.size());
    std::vector<int> slot(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < medium.size(); ++i) {
        slot[static_cast<std::size_t>(medium[i])] = static_cast<int>(i);
        for (const auto& inc : g.incident(medium[i]))
            if (!in_isolated[static_cast<std::size_t>(inc.edge)])
                options[i].push_back(inc.edge);
        if (options[i].empty())
            throw StageFailure("aux_graph", "vertex " + std::to_string(medium[i]) + " has every incident edge in E_I");
    }

    auto bound = static_cast<int>(std::floor(aux_degree_bound(cls.delta, profile)));
    using Choice = std::vector<EdgeId>;

    auto pick = [&](std::size_t i, Rng& r) {
        std::uniform_int_distribution<std::size_t> dist(0, options[i].size() - 1);
        return options[i][dist(r)];
    };
    auto draw = [&](Rng& r) {
        Choice choice(medium.size());
        for (std::size_t i = 0; i < medium.size(); ++i)
            choice[i] = pick(i, r);
        return choice;
    };
    auto chosen_edges = [](const Choice& choice) {
        std::vector<EdgeId> edges(choice);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return edges;
    };
    auto violated = [&](const Choice& choice) {
        std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
        for (auto e : chosen_edges(choice)) {
            ++deg[static_cast<std::size_t>(g.edge(e).u)];
            ++deg[static_cast<std::size_t>(g.edge(e).v)];
        }
        std::vector<std::size_t> bad;
        for (std::size_t v = 0; v < deg.size(); ++v)
            if (deg[v] > bound)
                bad.push_back(v);
        return bad;
    };
    // d_GA(v) depends on the choice of v and of its medium neighbours.
    auto redraw = [&](Choice& choice, std::span<const std::size_t> bad, Rng& r) {
        std::vector<bool> again(medium.size(), false);
        for (auto v : bad) {
            if (auto s = slot[v]; s >= 0)
                again[static_cast<std::size_t>(s)] = true;
            for (const auto& inc : g.incident(static_cast<Vertex>(v)))
                if (auto s = slot[static_cast<std::size_t>(inc.neighbour)]; s >= 0)
                    again[static_cast<std::size_t>(s)] = true;
        }
        for (std::size_t i = 0; i < medium.size(); ++i)
            if (again[i])
                choice[i] = pick(i, r);
    };

    auto result = resample(draw, violated, redraw, profile.policy(profile.aux_scope, g.vertex_count()), rng);
    return {SubgraphRef(g, chosen_edges(result.candidate)), result.restarts};
}

PreprocessResult preprocess_small(TotalColouring c, const Graph& g, const Classification& cls,
    const SubgraphRef& aux)
{
    PreprocessResult out;
    auto sums = total_sums(g, c);
    const Colour m0 = c.max_colour();
    auto partner = [&](Vertex v) { return cls.isolated_partner[static_cast<std::size_t>(v)]; };
    auto edge_colour = [&](EdgeId e) -> Colour& { return c.edge[static_cast<std::size_t>(e)]; };

    // Replace the colour of e by col, keeping the running sums in step.
    auto recolour = [&](EdgeId e, Colour col) {
        const auto& ed = g.edge(e);
        auto diff = col - edge_colour(e);
        sums[static_cast<std::size_t>(ed.u)] += diff;
        sums[static_cast<std::size_t>(ed.v)] += diff;
        edge_colour(e) = col;
    };

    std::vector<Colour> blocked;
    auto collect_adjacent = [&](EdgeId e) {
        blocked.clear();
        for (auto end : {g.edge(e).u, g.edge(e).v})
            for (const auto& inc : g.incident(end))
                if (inc.edge != e)
                    blocked.push_back(edge_colour(inc.edge));
        if (c.mode == Mode::total) {
            blocked.push_back(c.vertex[static_cast<std::size_t>(g.edge(e).u)]);
            blocked.push_back(c.vertex[static_cast<std::size_t>(g.edge(e).v)]);
        }
        std::sort(blocked.begin(), blocked.end());
    };
    auto is_blocked = [&](Colour col) { return std::binary_search(blocked.begin(), blocked.end(), col); };

    // With col on e, does every E_I edge hanging off e keep distinct end sums?
    auto isolated_ok = [&](EdgeId e, Colour col) {
        auto diff = col - edge_colour(e);
        for (auto end : {g.edge(e).u, g.edge(e).v}) {
            auto y = partner(end);
            if (y < 0 || y == g.edge(e).other(end))
                continue;
            if (sums[static_cast<std::size_t>(end)] + diff == sums[static_cast<std::size_t>(y)])
                return false;
        }
        return true;
    };

    for (auto e : aux.edges()) {
        collect_adjacent(e);
        Colour col = m0 + 1;
        while (is_blocked(col) || !isolated_ok(e, col))
            ++col;
        recolour(e, col);
        ++out.recoloured_aux;
    }

    // Remaining E_I conflicts: move one edge adjacent to the isolated edge.
    const Colour limit = cls.delta + static_cast<Colour>(std::ceil(delta_power(cls.delta, 0.5))) + 3;
    for (auto f : cls.isolated) {
        auto x = g.edge(f).u;
        auto y = g.edge(f).v;
        if (sums[static_cast<std::size_t>(x)] != sums[static_cast<std::size_t>(y)])
            continue;
        bool fixed = false;
        for (auto end : {x, y}) {
            for (const auto& inc : g.incident(end)) {
                if (inc.edge == f)
                    continue;
                collect_adjacent(inc.edge);
                auto other = end == x ? y : x;
                for (Colour col = 1; col <= limit && !fixed; ++col) {
                    if (col == edge_colour(inc.edge) || is_blocked(col))
                        continue;
                    auto diff = col - edge_colour(inc.edge);
                    if (sums[static_cast<std::size_t>(end)] + diff == sums[static_cast<std::size_t>(other)])
                        continue;
                    recolour(inc.edge, col);
                    fixed = true;
                }
                if (fixed)
                    break;
            }
            if (fixed)
                break;
        }
        if (!fixed)
            throw StageFailure("preprocess", "no adjacent recolouring separates the ends of E_I edge "
                    + std::to_string(x) + "-" + std::to_string(y));
        ++out.fixed_isolated;
    }

    out.m_prime = c.max_colour();
    out.colouring = std::move(c);
    return out;
}

} // namespace nsd
