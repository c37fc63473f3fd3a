#include "nsd/pipeline.hpp"
#include "nsd/workbench.hpp"

#include <algorithm>

namespace nsd {

namespace {

    class Repair {
    public:
        Repair(const Graph& g, TotalColouring c)
            : g_(g)
            , c_(std::move(c))
            , sums_(total_sums(g, c_))
            , limit_(4 * (static_cast<Colour>(max_degree(g)) + 1))
        {
        }

        std::vector<EdgeId> conflicts() const
        {
            std::vector<EdgeId> out;
            for (EdgeId e = 0; e < g_.edge_count(); ++e)
                if (clash(e))
                    out.push_back(e);
            return out;
        }

        bool clash(EdgeId e) const
        {
            const auto& ed = g_.edge(e);
            return sum(ed.u) == sum(ed.v);
        }

        // Moves one element at an end of e. A move that leaves both touched
        // vertices clash free wins; otherwise the first move separating e.
        void fix(EdgeId e)
        {
            struct Move {
                bool vertex;
                int id;
                Colour colour;
            };
            std::optional<Move> fallback;
            const auto& ed = g_.edge(e);
            for (auto x : {ed.u, ed.v}) {
                auto y = ed.other(x);
                auto try_move = [&](const Move& mv) {
                    apply(mv.vertex, mv.id, mv.colour);
                    bool separated = sum(x) != sum(y);
                    bool clean = separated && clear_at(x);
                    if (clean && !mv.vertex)
                        clean = clear_at(g_.edge(mv.id).other(x));
                    return std::pair{separated, clean};
                };
                std::vector<Move> moves;
                for (const auto& inc : g_.incident(x))
                    moves.push_back({false, inc.edge, 0});
                if (c_.mode == Mode::total)
                    moves.push_back({true, x, 0});
                for (auto mv : moves) {
                    Colour old = mv.vertex ? c_.vertex[static_cast<std::size_t>(mv.id)] : c_.edge[static_cast<std::size_t>(mv.id)];
                    for (Colour col = 1; col <= limit_; ++col) {
                        if (col == old || !(mv.vertex ? vertex_ok(mv.id, col) : edge_ok(mv.id, col)))
                            continue;
                        mv.colour = col;
                        auto [separated, clean] = try_move(mv);
                        apply(mv.vertex, mv.id, old);
                        if (clean) {
                            apply(mv.vertex, mv.id, col);
                            return;
                        }
                        if (separated && !fallback)
                            fallback = mv;
                    }
                }
            }
            if (fallback)
                apply(fallback->vertex, fallback->id, fallback->colour);
        }

        TotalColouring take() { return std::move(c_); }

    private:
        Sum sum(Vertex v) const { return sums_[static_cast<std::size_t>(v)]; }

        bool clear_at(Vertex x) const
        {
            for (const auto& inc : g_.incident(x))
                if (sum(inc.neighbour) == sum(x))
                    return false;
            return true;
        }

        bool edge_ok(EdgeId e, Colour col) const
        {
            const auto& ed = g_.edge(e);
            for (auto end : {ed.u, ed.v}) {
                if (c_.mode == Mode::total && c_.vertex[static_cast<std::size_t>(end)] == col)
                    return false;
                for (const auto& inc : g_.incident(end))
                    if (inc.edge != e && c_.edge[static_cast<std::size_t>(inc.edge)] == col)
                        return false;
            }
            return true;
        }

        bool vertex_ok(Vertex v, Colour col) const
        {
            for (const auto& inc : g_.incident(v))
                if (c_.edge[static_cast<std::size_t>(inc.edge)] == col || c_.vertex[static_cast<std::size_t>(inc.neighbour)] == col)
                    return false;
            return true;
        }

        void apply(bool vertex, int id, Colour col)
        {
            if (vertex) {
                auto& slot = c_.vertex[static_cast<std::size_t>(id)];
                sums_[static_cast<std::size_t>(id)] += col - slot;
                slot = col;
                return;
            }
            auto& slot = c_.edge[static_cast<std::size_t>(id)];
            const auto& ed = g_.edge(id);
            sums_[static_cast<std::size_t>(ed.u)] += col - slot;
            sums_[static_cast<std::size_t>(ed.v)] += col - slot;
            slot = col;
        }

        const Graph& g_;
        TotalColouring c_;
        std::vector<Sum> sums_;
        Colour limit_;
    };

} // namespace

GreedyRepairResult greedy_repair(const Graph& g, Mode mode, int max_sweeps)
{
    if (mode == Mode::edge)
        if (auto iso = isolated_edges(SubgraphRef::whole(g)); !iso.empty())
            throw IsolatedEdgeError(iso.front());

    Repair repair(g, initial_colouring(g, mode));
    for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
        auto bad = repair.conflicts();
        if (bad.empty()) {
            GreedyRepairResult out{repair.take(), sweep};
            if (!verify_nsd(g, out.colouring).pass)
                throw std::logic_error("greedy repair produced an unverified colouring");
            return out;
        }
        if (sweep == max_sweeps)
            break;
        for (auto e : bad)
            if (repair.clash(e))
                repair.fix(e);
    }
    throw GreedyRepairFailed("greedy repair still has conflicts after " + std::to_string(max_sweeps) + " sweeps");
}

} // namespace nsd
