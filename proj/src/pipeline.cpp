#include "nsd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nsd {

FinalAdjustResult final_adjust(TotalColouring c, const Graph& g, const Classification& cls, Colour ceiling)
{
    FinalAdjustResult out;
    auto sums = total_sums(g, c);
    std::vector<Colour> clash;  // colours that would equalise a sum
    std::vector<Colour> proper; // colours already used next to the edge

    for (auto e : cls.small_graph.edges()) {
        const auto& ed = g.edge(e);
        Colour old = c.edge[static_cast<std::size_t>(e)];
        clash.clear();
        proper.clear();
        for (auto [x, y] : {std::pair{ed.u, ed.v}, std::pair{ed.v, ed.u}}) {
            for (const auto& inc : g.incident(x)) {
                if (inc.neighbour == y)
                    continue;
                clash.push_back(sums[static_cast<std::size_t>(inc.neighbour)] - sums[static_cast<std::size_t>(x)] + old);
                proper.push_back(c.edge[static_cast<std::size_t>(inc.edge)]);
            }
            if (c.mode == Mode::total)
                proper.push_back(c.vertex[static_cast<std::size_t>(x)]);
        }
        std::sort(clash.begin(), clash.end());
        if (!std::binary_search(clash.begin(), clash.end(), old))
            continue;
        std::sort(proper.begin(), proper.end());
        Colour pick = 0;
        for (Colour col = 1; col <= ceiling; ++col)
            if (!std::binary_search(clash.begin(), clash.end(), col)
                && !std::binary_search(proper.begin(), proper.end(), col)) {
                pick = col;
                break;
            }
        if (pick == 0)
            throw StageFailure("final_adjust", "no colour up to " + std::to_string(ceiling) + " for edge "
                    + std::to_string(ed.u) + "-" + std::to_string(ed.v));
        sums[static_cast<std::size_t>(ed.u)] += pick - old;
        sums[static_cast<std::size_t>(ed.v)] += pick - old;
        c.edge[static_cast<std::size_t>(e)] = pick;
        ++out.modified_edges;
    }
    out.colouring = std::move(c);
    return out;
}

namespace {

    void require_proper(const Graph& g, const TotalColouring& c, const std::string& stage)
    {
        if (!is_proper(g, c))
            throw std::logic_error("colouring not proper after stage " + stage);
    }

    std::string fixed(double x)
    {
        std::ostringstream out;
        out.setf(std::ios::fixed);
        out.precision(3);
        out << x;
        return out.str();
    }

} // namespace

PipelineResult run(const Graph& g, Mode mode, const Profile& profile, std::uint64_t seed)
{
    profile.validate();
    if (mode == Mode::edge)
        if (auto iso = isolated_edges(SubgraphRef::whole(g)); !iso.empty())
            throw IsolatedEdgeError(iso.front());

    PipelineResult result;
    auto& trace = result.trace;
    auto cls = classify(g, profile);
    trace.delta = cls.delta;
    Rng rng(seed);

    auto c = initial_colouring(g, mode);
    require_proper(g, c, "initial");
    trace.m0 = c.max_colour();
    {
        StageRecord rec;
        rec.stage = "initial";
        rec.palette = trace.m0;
        rec.note("k_eff", std::to_string(trace.m0 - cls.delta));
        rec.note("small", std::to_string(Classification::members(cls.small).size()));
        rec.note("medium", std::to_string(Classification::members(cls.medium).size()));
        rec.note("large", std::to_string(Classification::members(cls.large).size()));
        rec.note("isolated", std::to_string(cls.isolated.size()));
        trace.stages.push_back(std::move(rec));
    }

    auto stage_guard = [](const std::string& stage, auto&& body) {
        try {
            return body();
        } catch (const RestartLimitError& err) {
            throw StageFailure(stage, err.what());
        }
    };

    auto aux = stage_guard("aux_graph", [&] { return sample_aux_graph(g, cls, rng, profile); });
    {
        auto deg = aux.subgraph.degrees();
        StageRecord rec;
        rec.stage = "aux_graph";
        rec.restarts = aux.restarts;
        rec.palette = trace.m0;
        rec.note("edges", std::to_string(aux.subgraph.size()));
        rec.note("max_degree", std::to_string(deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end())));
        rec.note("bound", fixed(aux_degree_bound(cls.delta, profile)));
        trace.stages.push_back(std::move(rec));
    }

    auto pre = preprocess_small(std::move(c), g, cls, aux.subgraph);
    require_proper(g, pre.colouring, "preprocess");
    trace.m_prime = pre.m_prime;
    {
        double limit = static_cast<double>(trace.m0) + 2.0 * aux_degree_bound(cls.delta, profile) + 2.0;
        StageRecord rec;
        rec.stage = "preprocess";
        rec.palette = pre.m_prime;
        rec.modified_edges = pre.recoloured_aux + pre.fixed_isolated;
        rec.note("fixed_isolated", std::to_string(pre.fixed_isolated));
        rec.note("palette_limit", fixed(limit));
        trace.stages.push_back(std::move(rec));
        if (static_cast<double>(pre.m_prime) > limit)
            throw std::logic_error("preprocessing palette above m0 + 2*aux_bound + 2");
    }

    trace.B = compute_B(cls.delta, profile);
    auto base = stage_guard("base_subgraph", [&] { return sample_base_subgraph(g, cls, rng, profile); });
    {
        auto deg = base.subgraph.degrees();
        auto bounds = base_bounds(cls.delta, profile);
        StageRecord rec;
        rec.stage = "base_subgraph";
        rec.restarts = base.restarts;
        rec.palette = trace.m_prime;
        rec.note("edges", std::to_string(base.subgraph.size()));
        rec.note("max_degree", std::to_string(deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end())));
        rec.note("upper", fixed(bounds.upper_all));
        rec.note("lower_large", fixed(bounds.lower_large));
        rec.note("probability", fixed(bounds.probability));
        trace.stages.push_back(std::move(rec));
    }

    auto modded = recolour_mod_B(std::move(pre.colouring), base.subgraph, trace.B, trace.m_prime, cls);
    require_proper(g, modded, "recolour_mod_B");
    {
        StageRecord rec;
        rec.stage = "recolour_mod_B";
        rec.palette = modded.max_colour();
        rec.modified_edges = base.subgraph.size();
        rec.note("B", std::to_string(trace.B));
        trace.stages.push_back(std::move(rec));
    }

    auto order = build_ordering(base.subgraph);
    auto dist = distinguish_large(std::move(modded), g, base.subgraph, order, trace.B, cls);
    require_proper(g, dist.colouring, "distinguish_large");
    {
        StageRecord rec;
        rec.stage = "distinguish_large";
        rec.palette = dist.colouring.max_colour();
        rec.modified_edges = dist.modified_edges;
        rec.note("components", std::to_string(order.component_start.size()));
        rec.note("processed", std::to_string(dist.processed));
        rec.note("max_changes", std::to_string(dist.max_changes_per_edge));
        rec.note("shared_pairs", std::to_string(dist.shared_pairs));
        rec.note("closing_bound_misses", std::to_string(dist.closing_bound_misses));
        rec.note("candidate_sums", std::to_string(dist.candidate_sums));
        trace.stages.push_back(std::move(rec));
    }

    auto fin = final_adjust(std::move(dist.colouring), g, cls, trace.relative_bound());
    require_proper(g, fin.colouring, "final_adjust");
    {
        StageRecord rec;
        rec.stage = "final_adjust";
        rec.palette = fin.colouring.max_colour();
        rec.modified_edges = fin.modified_edges;
        trace.stages.push_back(std::move(rec));
    }

    result.report = verify_nsd(g, fin.colouring);
    if (!result.report.pass)
        throw StageFailure("verify", result.report.summary());
    if (result.report.max_colour > trace.relative_bound())
        throw std::logic_error("largest colour exceeds m' + 4B");
    result.colouring = std::move(fin.colouring);
    return result;
}

} // namespace nsd
