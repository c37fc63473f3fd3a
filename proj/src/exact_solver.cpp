#include "nsd/exact_solver.hpp"

#include <algorithm>
#include <bit>

namespace nsd {

namespace {

    using Mask = std::uint64_t;

    // Elements are the edges (ids 0..m-1) followed, in total mode, by the
    // vertices (ids m..m+n-1). Colours live in 1..k with k < 64 so a domain
    // fits one word.
    class Search {
    public:
        Search(const Graph& g, int k, Mode mode, const SolveOptions& options, std::uint64_t& nodes)
            : g_(g)
            , k_(k)
            , mode_(mode)
            , limit_(options.node_limit)
            , nodes_(nodes)
        {
            auto m = static_cast<std::size_t>(g.edge_count());
            auto n = static_cast<std::size_t>(g.vertex_count());
            element_count_ = m + (mode == Mode::total ? n : 0);
            conflicts_.resize(element_count_);
            touches_.resize(element_count_);
            members_.resize(n);

            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                auto inc = g.incident(v);
                for (std::size_t i = 0; i < inc.size(); ++i)
                    for (std::size_t j = i + 1; j < inc.size(); ++j) {
                        conflicts_[static_cast<std::size_t>(inc[i].edge)].push_back(inc[j].edge);
                        conflicts_[static_cast<std::size_t>(inc[j].edge)].push_back(inc[i].edge);
                    }
            }
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                for (auto end : {g.edge(e).u, g.edge(e).v}) {
                    touches_[static_cast<std::size_t>(e)].push_back(end);
                    members_[static_cast<std::size_t>(end)].push_back(e);
                }
            }
            if (mode == Mode::total) {
                for (Vertex v = 0; v < g.vertex_count(); ++v) {
                    auto x = vertex_element(v);
                    touches_[x].push_back(v);
                    members_[static_cast<std::size_t>(v)].push_back(static_cast<int>(x));
                    for (const auto& inc : g.incident(v)) {
                        conflicts_[x].push_back(inc.edge);
                        conflicts_[static_cast<std::size_t>(inc.edge)].push_back(static_cast<int>(x));
                        conflicts_[x].push_back(static_cast<int>(vertex_element(inc.neighbour)));
                    }
                }
            }
            colour_.assign(element_count_, 0);
            partial_.assign(n, 0);
            remaining_.resize(n);
            for (std::size_t v = 0; v < n; ++v)
                remaining_[v] = static_cast<int>(members_[v].size());
            full_ = k >= 64 ? ~Mask{0} : ((Mask{1} << k) - 1) << 1;
        }

        std::optional<TotalColouring> run()
        {
            // Vertices without members are complete from the start; with no
            // elements at all there is nothing that could conflict.
            if (!search(0))
                return std::nullopt;
            TotalColouring c(g_, mode_);
            for (EdgeId e = 0; e < g_.edge_count(); ++e)
                c.edge[static_cast<std::size_t>(e)] = colour_[static_cast<std::size_t>(e)];
            if (mode_ == Mode::total)
                for (Vertex v = 0; v < g_.vertex_count(); ++v)
                    c.vertex[static_cast<std::size_t>(v)] = colour_[vertex_element(v)];
            return c;
        }

    private:
        std::size_t vertex_element(Vertex v) const
        {
            return static_cast<std::size_t>(g_.edge_count()) + static_cast<std::size_t>(v);
        }

        // Colours x may still take: not used by a coloured conflicting
        // element, and not completing a vertex sum equal to a finished
        // neighbour. Bit c stands for colour c.
        Mask domain(std::size_t x) const
        {
            Mask forbidden = 0;
            for (auto y : conflicts_[x])
                if (auto cy = colour_[static_cast<std::size_t>(y)]; cy != 0)
                    forbidden |= Mask{1} << cy;
            Mask allowed = full_ & ~forbidden;
            for (auto v : touches_[x]) {
                auto vi = static_cast<std::size_t>(v);
                if (remaining_[vi] != 1)
                    continue;
                for (const auto& inc : g_.incident(v)) {
                    auto ui = static_cast<std::size_t>(inc.neighbour);
                    if (remaining_[ui] == 0) {
                        auto bad = partial_[ui] - partial_[vi];
                        if (bad >= 1 && bad <= k_)
                            allowed &= ~(Mask{1} << bad);
                    } else if (remaining_[ui] == 1 && std::find(touches_[x].begin(), touches_[x].end(), inc.neighbour) != touches_[x].end()) {
                        // x is the last element of both ends; their
                        // difference no longer depends on x.
                        if (partial_[ui] == partial_[vi])
                            return 0;
                    }
                }
            }
            return allowed;
        }

        bool consistent_after(std::size_t x) const
        {
            for (auto v : touches_[x]) {
                auto vi = static_cast<std::size_t>(v);
                if (remaining_[vi] != 0)
                    continue;
                for (const auto& inc : g_.incident(v)) {
                    auto ui = static_cast<std::size_t>(inc.neighbour);
                    if (remaining_[ui] == 0 && partial_[ui] == partial_[vi])
                        return false;
                }
            }
            return true;
        }

        void assign(std::size_t x, int c)
        {
            colour_[x] = c;
            for (auto v : touches_[x]) {
                partial_[static_cast<std::size_t>(v)] += c;
                --remaining_[static_cast<std::size_t>(v)];
            }
        }

        void unassign(std::size_t x)
        {
            for (auto v : touches_[x]) {
                partial_[static_cast<std::size_t>(v)] -= colour_[x];
                ++remaining_[static_cast<std::size_t>(v)];
            }
            colour_[x] = 0;
        }

        bool search(std::size_t depth)
        {
            if (depth == element_count_)
                return true;

            // Most constrained element first; ties go to the one with more
            // uncoloured conflicts, then the lowest id.
            std::size_t best = element_count_;
            int best_size = 65;
            int best_degree = -1;
            Mask best_domain = 0;
            for (std::size_t x = 0; x < element_count_; ++x) {
                if (colour_[x] != 0)
                    continue;
                auto dom = domain(x);
                int size = std::popcount(dom);
                if (size == 0)
                    return false;
                int degree = 0;
                for (auto y : conflicts_[x])
                    degree += colour_[static_cast<std::size_t>(y)] == 0;
                if (size < best_size || (size == best_size && degree > best_degree)) {
                    best = x;
                    best_size = size;
                    best_degree = degree;
                    best_domain = dom;
                }
            }

            for (Mask dom = best_domain; dom != 0; dom &= dom - 1) {
                int c = std::countr_zero(dom);
                if (++nodes_ > limit_)
                    throw SearchLimitExceeded(k_, nodes_);
                assign(best, c);
                if (consistent_after(best) && search(depth + 1))
                    return true;
                unassign(best);
            }
            return false;
        }

        const Graph& g_;
        int k_;
        Mode mode_;
        std::uint64_t limit_;
        std::uint64_t& nodes_;
        std::size_t element_count_ = 0;
        std::vector<std::vector<int>> conflicts_;
        std::vector<std::vector<Vertex>> touches_;
        std::vector<std::vector<int>> members_;
        std::vector<int> colour_;
        std::vector<Sum> partial_;
        std::vector<int> remaining_;
        Mask full_ = 0;
    };

    void check_preconditions(const Graph& g, int k, Mode mode)
    {
        if (k <= 0)
            throw std::invalid_argument("k must be positive");
        if (k > 62)
            throw std::invalid_argument("exact search supports k up to 62");
        if (mode == Mode::edge)
            if (auto iso = isolated_edges(SubgraphRef::whole(g)); !iso.empty())
                throw IsolatedEdgeError(iso.front());
    }

} // namespace

std::optional<TotalColouring> exists_colouring(const Graph& g, int k, Mode mode, const SolveOptions& options,
    std::uint64_t* nodes)
{
    check_preconditions(g, k, mode);
    std::uint64_t local = nodes ? *nodes : 0;
    Search search(g, k, mode, options, local);
    auto result = [&] {
        try {
            return search.run();
        } catch (...) {
            if (nodes)
                *nodes = local;
            throw;
        }
    }();
    if (nodes)
        *nodes = local;
    return result;
}

SolveResult chi_sigma(const Graph& g, Mode mode, const SolveOptions& options)
{
    if (mode == Mode::edge && g.edge_count() == 0)
        throw std::invalid_argument("edge mode needs at least one edge");
    int delta = max_degree(g);
    int k = mode == Mode::edge ? delta : (g.edge_count() > 0 ? delta + 1 : 1);
    k = std::max(k, 1);
    SolveResult result;
    for (;; ++k) {
        check_preconditions(g, k, mode);
        auto witness = exists_colouring(g, k, mode, options, &result.nodes);
        if (witness) {
            result.k = k;
            result.witness = std::move(*witness);
            return result;
        }
    }
}

} // namespace nsd
