#include "nsd/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace nsd {

namespace {

    // An H-edge at the vertex being processed whose colour may move by a
    // multiple of B within [lo, hi] (in units of B).
    struct Toggle {
        EdgeId edge;
        Vertex other;
        int lo;
        int hi;
    };

    class Distinguisher {
    public:
        Distinguisher(TotalColouring c, const Graph& g, const SubgraphRef& h, const VertexOrdering& order, int B,
            const Classification& cls)
            : g_(g)
            , order_(order)
            , B_(B)
            , cls_(cls)
            , c_(std::move(c))
            , sums_(total_sums(g, c_))
            , position_(static_cast<std::size_t>(g.vertex_count()), -1)
            , changes_(static_cast<std::size_t>(g.edge_count()), 0)
            , h_adj_(static_cast<std::size_t>(g.vertex_count()))
            , residue_taken_(static_cast<std::size_t>(B), false)
        {
            if (B < 1)
                throw std::invalid_argument("B must be positive");
            pairs_.B = B;
            pairs_.low.assign(static_cast<std::size_t>(g.vertex_count()), std::nullopt);
            for (std::size_t i = 0; i < order.sequence.size(); ++i)
                position_[static_cast<std::size_t>(order.sequence[i])] = static_cast<int>(i);
            for (auto e : h.edges()) {
                const auto& ed = g.edge(e);
                h_adj_[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
                h_adj_[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
            }
            for (auto& list : h_adj_)
                std::sort(list.begin(), list.end(),
                    [](const Incidence& a, const Incidence& b) { return a.neighbour < b.neighbour; });
        }

        DistinguishResult run()
        {
            const auto& seq = order_.sequence;
            for (std::size_t k = 0; k < order_.component_start.size(); ++k) {
                std::size_t first = order_.component_start[k];
                std::size_t last = k + 1 < order_.component_start.size() ? order_.component_start[k + 1] : seq.size();
                if (last - first < 2)
                    throw std::logic_error("component with fewer than two vertices");
                for (std::size_t i = first; i + 2 < last; ++i)
                    if (large(seq[i]))
                        process_regular(seq[i]);
                process_closing(seq[last - 2], seq[last - 1]);
            }

            DistinguishResult out;
            for (auto n : changes_) {
                out.max_changes_per_edge = std::max(out.max_changes_per_edge, n);
                out.modified_edges += n > 0;
            }
            out.processed = processed_;
            out.shared_pairs = shared_pairs_;
            out.closing_bound_misses = closing_misses_;
            out.candidate_sums = candidates_;
            out.colouring = std::move(c_);
            out.pairs = std::move(pairs_);
            return out;
        }

    private:
        bool large(Vertex v) const { return cls_.large[static_cast<std::size_t>(v)]; }
        Sum& sum(Vertex v) { return sums_[static_cast<std::size_t>(v)]; }
        Colour& colour(EdgeId e) { return c_.edge[static_cast<std::size_t>(e)]; }
        Sum mod(Sum x) const { return ((x % B_) + B_) % B_; }
        std::optional<Sum>& low(Vertex v) { return pairs_.low[static_cast<std::size_t>(v)]; }

        void shift(EdgeId e, Colour by)
        {
            if (by == 0)
                return;
            const auto& ed = g_.edge(e);
            colour(e) += by;
            sum(ed.u) += by;
            sum(ed.v) += by;
            if (++changes_[static_cast<std::size_t>(e)] > 2)
                throw std::logic_error("edge " + std::to_string(ed.u) + "-" + std::to_string(ed.v)
                    + " modified more than twice");
        }

        // Range of ±B moves allowed on the edge to `other`: an assigned
        // neighbour must stay inside its pair, which leaves one direction.
        Toggle toggle_for(const Incidence& inc, bool forward)
        {
            if (forward)
                return {inc.edge, inc.neighbour, 0, 1};
            if (auto lo = low(inc.neighbour))
                return sum(inc.neighbour) == *lo ? Toggle{inc.edge, inc.neighbour, 0, 1}
                                                 : Toggle{inc.edge, inc.neighbour, -1, 0};
            return {inc.edge, inc.neighbour, -1, 1};
        }

        // Lows of the pairs held by assigned large neighbours of v in G.
        std::vector<Sum> neighbour_pairs(Vertex v)
        {
            std::vector<Sum> lows;
            for (const auto& inc : g_.incident(v))
                if (auto lo = low(inc.neighbour))
                    lows.push_back(*lo);
            std::sort(lows.begin(), lows.end());
            return lows;
        }

        // Residue offsets 0..B-1 that may be added to e = (v, w): the new
        // colour must differ mod B from the other H-edges at both ends, and
        // the ends of an E_I edge at v or w must stay distinct mod B.
        std::vector<int> feasible_offsets(EdgeId e)
        {
            const auto& ed = g_.edge(e);
            std::fill(residue_taken_.begin(), residue_taken_.end(), false);
            for (auto end : {ed.u, ed.v})
                for (const auto& inc : h_adj_[static_cast<std::size_t>(end)])
                    if (inc.edge != e)
                        residue_taken_[static_cast<std::size_t>(mod(colour(inc.edge)))] = true;
            std::vector<int> out;
            for (int delta = 0; delta < B_; ++delta) {
                if (residue_taken_[static_cast<std::size_t>(mod(colour(e) + delta))])
                    continue;
                bool ok = true;
                for (auto end : {ed.u, ed.v}) {
                    auto y = cls_.isolated_partner[static_cast<std::size_t>(end)];
                    if (y >= 0 && y != ed.other(end) && mod(sum(end) + delta - sum(y)) == 0)
                        ok = false;
                }
                if (ok)
                    out.push_back(delta);
            }
            return out;
        }

        // Moves the toggles to total `k` (in units of B): start every toggle
        // at its minimum and raise them in list order.
        void realise(const std::vector<Toggle>& toggles, long long k)
        {
            long long need = k;
            for (const auto& t : toggles)
                need -= t.lo;
            for (const auto& t : toggles) {
                long long raise = std::min<long long>(need, t.hi - t.lo);
                need -= raise;
                shift(t.edge, static_cast<Colour>((t.lo + raise) * B_));
            }
            if (need != 0)
                throw std::logic_error("toggle target out of range");
        }

        void process_regular(Vertex v)
        {
            ++processed_;
            auto pos = position_[static_cast<std::size_t>(v)];
            const Incidence* last_forward = nullptr;
            for (const auto& inc : h_adj_[static_cast<std::size_t>(v)])
                if (position_[static_cast<std::size_t>(inc.neighbour)] > pos
                    && (!last_forward
                        || position_[static_cast<std::size_t>(inc.neighbour)]
                            > position_[static_cast<std::size_t>(last_forward->neighbour)]))
                    last_forward = &inc;
            if (!last_forward)
                throw std::logic_error("vertex " + std::to_string(v) + " has no forward neighbour");

            std::vector<Toggle> toggles;
            long long kmin = 0, kmax = 0;
            for (const auto& inc : h_adj_[static_cast<std::size_t>(v)]) {
                if (&inc == last_forward)
                    continue;
                auto t = toggle_for(inc, position_[static_cast<std::size_t>(inc.neighbour)] > pos);
                kmin += t.lo;
                kmax += t.hi;
                toggles.push_back(t);
            }
            auto offsets = feasible_offsets(last_forward->edge);
            auto taken = neighbour_pairs(v);
            Sum base = sum(v);

            // Sums base + k·B + offset in increasing order; take the first
            // whose pair no assigned neighbour holds.
            for (long long k = kmin; k <= kmax; ++k) {
                for (int delta : offsets) {
                    ++candidates_;
                    Sum s = base + k * B_ + delta;
                    auto [lo, hi] = pair_of(s, B_);
                    if (std::binary_search(taken.begin(), taken.end(), lo))
                        continue;
                    shift(last_forward->edge, delta);
                    realise(toggles, k);
                    if (sum(v) != s)
                        throw std::logic_error("realised sum differs from the selected one");
                    low(v) = lo;
                    return;
                }
            }
            throw StageFailure("distinguish_large", "vertex " + std::to_string(v) + ": no free pair among "
                    + std::to_string((kmax - kmin + 1) * static_cast<long long>(offsets.size())) + " candidate sums ("
                    + std::to_string(taken.size()) + " neighbour pairs)");
        }

        // Choose a pair for x whose sums step by B; toggles on `frozen`
        // edges are not allowed. At most one assigned neighbour may share
        // the pair, in which case the edge to it is frozen and the two sums
        // must differ. Returns that neighbour, if any.
        std::optional<Vertex> settle_closing(Vertex x, const std::vector<EdgeId>& frozen)
        {
            ++processed_;
            std::vector<Toggle> toggles;
            for (const auto& inc : h_adj_[static_cast<std::size_t>(x)]) {
                if (std::find(frozen.begin(), frozen.end(), inc.edge) != frozen.end())
                    continue;
                toggles.push_back(toggle_for(inc, false));
            }
            long long kmin = 0, kmax = 0;
            for (const auto& t : toggles) {
                kmin += t.lo;
                kmax += t.hi;
            }
            auto taken = neighbour_pairs(x);
            Sum base = sum(x);

            for (long long k = kmin; k <= kmax; ++k) {
                ++candidates_;
                Sum s = base + k * B_;
                auto lo = pair_of(s, B_).first;
                if (std::binary_search(taken.begin(), taken.end(), lo))
                    continue;
                realise(toggles, k);
                low(x) = lo;
                return std::nullopt;
            }

            for (long long k = kmin; k <= kmax; ++k) {
                Sum s = base + k * B_;
                auto lo = pair_of(s, B_).first;
                auto range = std::equal_range(taken.begin(), taken.end(), lo);
                if (range.second - range.first != 1)
                    continue;
                Vertex y = -1;
                for (const auto& inc : g_.incident(x))
                    if (low(inc.neighbour) == lo)
                        y = inc.neighbour;
                if (sum(y) == s)
                    continue;
                // Freeze the edge to y so y keeps its sum.
                std::vector<Toggle> rest;
                long long rmin = 0, rmax = 0;
                for (const auto& t : toggles)
                    if (t.other != y) {
                        rest.push_back(t);
                        rmin += t.lo;
                        rmax += t.hi;
                    }
                if (k < rmin || k > rmax)
                    continue;
                realise(rest, k);
                low(x) = lo;
                ++shared_pairs_;
                return y;
            }
            throw StageFailure("distinguish_large", "closing vertex " + std::to_string(x) + ": no usable pair among "
                    + std::to_string(kmax - kmin + 1) + " candidate sums (" + std::to_string(taken.size())
                    + " neighbour pairs)");
        }

        // The last two vertices a, b of a component share the edge ab.
        void process_closing(Vertex a, Vertex b)
        {
            bool la = large(a);
            bool lb = large(b);
            if (!la && !lb)
                return;
            auto ab = g_.find_edge(a, b);
            auto in_h = std::find_if(h_adj_[static_cast<std::size_t>(a)].begin(),
                h_adj_[static_cast<std::size_t>(a)].end(), [&](const Incidence& inc) { return inc.neighbour == b; });
            if (!ab || in_h == h_adj_[static_cast<std::size_t>(a)].end())
                throw std::logic_error("closing vertices are not joined in H");

            // Residue of ab: fewest assigned neighbours sharing the resulting
            // sum residue, worst end counted.
            auto histogram = [&](Vertex x) {
                std::vector<int> count(static_cast<std::size_t>(B_), 0);
                if (large(x))
                    for (const auto& inc : g_.incident(x))
                        if (auto lo = low(inc.neighbour))
                            ++count[static_cast<std::size_t>(mod(*lo))];
                return count;
            };
            auto count_a = histogram(a);
            auto count_b = histogram(b);
            auto offsets = feasible_offsets(*ab);
            if (offsets.empty())
                throw StageFailure("distinguish_large", "no feasible residue for closing edge " + std::to_string(a) + "-"
                        + std::to_string(b));
            int best_delta = -1;
            int best_score = 0;
            for (int delta : offsets) {
                int score = std::max(count_a[static_cast<std::size_t>(mod(sum(a) + delta))],
                    count_b[static_cast<std::size_t>(mod(sum(b) + delta))]);
                if (best_delta < 0 || score < best_score) {
                    best_delta = delta;
                    best_score = score;
                }
            }
            if (best_score > 2.0 * delta_power(cls_.delta, 0.5) / 11.0)
                ++closing_misses_;
            shift(*ab, best_delta);

            std::vector<EdgeId> frozen_a{*ab};
            std::optional<Vertex> shared_a;
            if (la)
                shared_a = settle_closing(a, frozen_a);
            if (lb) {
                std::vector<EdgeId> frozen_b;
                if (la)
                    frozen_b.push_back(*ab);
                if (shared_a)
                    if (auto e = g_.find_edge(b, *shared_a))
                        frozen_b.push_back(*e);
                settle_closing(b, frozen_b);
            }
        }

        const Graph& g_;
        const VertexOrdering& order_;
        int B_;
        const Classification& cls_;
        TotalColouring c_;
        std::vector<Sum> sums_;
        std::vector<int> position_;
        std::vector<int> changes_;
        std::vector<std::vector<Incidence>> h_adj_;
        std::vector<bool> residue_taken_;
        PairAssignment pairs_;
        std::size_t processed_ = 0;
        std::size_t shared_pairs_ = 0;
        std::size_t closing_misses_ = 0;
        std::size_t candidates_ = 0;
    };

} // namespace

DistinguishResult distinguish_large(TotalColouring c, const Graph& g, const SubgraphRef& h,
    const VertexOrdering& order, int B, const Classification& cls)
{
    return Distinguisher(std::move(c), g, h, order, B, cls).run();
}

} // namespace nsd
