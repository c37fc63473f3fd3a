#include "nsd/pipeline.hpp"

#include <algorithm>

namespace nsd {

namespace {

    // Misra–Gries edge colouring with palette {1..Δ+1}. at_[v][c] holds the
    // edge of colour c at v, or -1 when c is free at v.
    class MisraGries {
    public:
        explicit MisraGries(const Graph& g)
            : g_(g)
            , palette_(max_degree(g) + 1)
            , stride_(static_cast<std::size_t>(palette_) + 1)
            , at_(static_cast<std::size_t>(g.vertex_count()) * stride_, -1)
            , colour_(static_cast<std::size_t>(g.edge_count()), 0)
            , in_fan_(static_cast<std::size_t>(g.vertex_count()), false)
        {
        }

        std::vector<Colour> run()
        {
            for (EdgeId e = 0; e < g_.edge_count(); ++e)
                colour_edge(e);
            return {colour_.begin(), colour_.end()};
        }

    private:
        int& slot(Vertex v, int c) { return at_[static_cast<std::size_t>(v) * stride_ + static_cast<std::size_t>(c)]; }
        bool is_free(Vertex v, int c) { return slot(v, c) < 0; }

        int free_colour(Vertex v)
        {
            for (int c = 1; c <= palette_; ++c)
                if (is_free(v, c))
                    return c;
            return 0;
        }

        int colour_of(Vertex x, Vertex y) const
        {
            return colour_[static_cast<std::size_t>(*g_.find_edge(x, y))];
        }

        void set(EdgeId e, int c)
        {
            const auto& ed = g_.edge(e);
            if (int old = colour_[static_cast<std::size_t>(e)]; old != 0) {
                slot(ed.u, old) = -1;
                slot(ed.v, old) = -1;
            }
            colour_[static_cast<std::size_t>(e)] = c;
            if (c != 0) {
                slot(ed.u, c) = e;
                slot(ed.v, c) = e;
            }
        }

        void colour_edge(EdgeId e)
        {
            Vertex x = g_.edge(e).u;
            Vertex f = g_.edge(e).v;

            for (int c = 1; c <= palette_; ++c)
                if (is_free(x, c) && is_free(f, c)) {
                    set(e, c);
                    return;
                }

            // Maximal fan of x starting at f.
            std::vector<Vertex> fan{f};
            in_fan_[static_cast<std::size_t>(f)] = true;
            for (bool grown = true; grown;) {
                grown = false;
                Vertex last = fan.back();
                for (int c = 1; c <= palette_ && !grown; ++c) {
                    if (!is_free(last, c))
                        continue;
                    int edge = slot(x, c);
                    if (edge < 0)
                        continue;
                    Vertex w = g_.edge(edge).other(x);
                    if (in_fan_[static_cast<std::size_t>(w)])
                        continue;
                    fan.push_back(w);
                    in_fan_[static_cast<std::size_t>(w)] = true;
                    grown = true;
                }
            }
            for (auto w : fan)
                in_fan_[static_cast<std::size_t>(w)] = false;

            int c = free_colour(x);
            int d = free_colour(fan.back());

            // Swap c and d along the alternating path that starts at x with
            // an edge of colour d.
            if (c != d) {
                std::vector<EdgeId> path;
                Vertex cur = x;
                int want = d;
                while (true) {
                    int edge = slot(cur, want);
                    if (edge < 0)
                        break;
                    path.push_back(edge);
                    cur = g_.edge(edge).other(cur);
                    want = want == d ? c : d;
                }
                std::vector<int> old;
                old.reserve(path.size());
                for (auto p : path) {
                    old.push_back(colour_[static_cast<std::size_t>(p)]);
                    set(p, 0);
                }
                for (std::size_t i = 0; i < path.size(); ++i)
                    set(path[i], old[i] == c ? d : c);
            }

            // First fan vertex w with d free such that fan[0..w] is still a fan.
            std::size_t stop = fan.size();
            for (std::size_t i = 0; i < fan.size(); ++i) {
                if (i > 0 && !is_free(fan[i - 1], colour_of(x, fan[i])))
                    break;
                if (is_free(fan[i], d)) {
                    stop = i;
                    break;
                }
            }
            if (stop == fan.size())
                throw std::logic_error("Misra-Gries: no rotatable fan prefix");

            // Rotate the prefix and close it with d.
            std::vector<int> shifted;
            for (std::size_t i = 0; i < stop; ++i)
                shifted.push_back(colour_of(x, fan[i + 1]));
            for (std::size_t i = 0; i <= stop; ++i)
                set(*g_.find_edge(x, fan[i]), 0);
            for (std::size_t i = 0; i < stop; ++i)
                set(*g_.find_edge(x, fan[i]), shifted[i]);
            set(*g_.find_edge(x, fan[stop]), d);
        }

        const Graph& g_;
        int palette_;
        std::size_t stride_;
        std::vector<int> at_;
        std::vector<int> colour_;
        std::vector<bool> in_fan_;
    };

} // namespace

std::vector<Colour> vizing_edge_colouring(const Graph& g)
{
    return MisraGries(g).run();
}

TotalColouring initial_colouring(const Graph& g, Mode mode)
{
    TotalColouring c(g, mode);
    c.edge = vizing_edge_colouring(g);
    if (mode == Mode::total) {
        std::vector<bool> taken;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            taken.assign(static_cast<std::size_t>(2 * g.degree(v) + 2), false);
            auto mark = [&](Colour col) {
                if (col > 0 && static_cast<std::size_t>(col) < taken.size())
                    taken[static_cast<std::size_t>(col)] = true;
            };
            for (const auto& inc : g.incident(v)) {
                mark(c.edge[static_cast<std::size_t>(inc.edge)]);
                mark(c.vertex[static_cast<std::size_t>(inc.neighbour)]);
            }
            Colour pick = 1;
            while (taken[static_cast<std::size_t>(pick)])
                ++pick;
            c.vertex[static_cast<std::size_t>(v)] = pick;
        }
    }
    return c;
}

} // namespace nsd
