#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsd {

using Rng = std::mt19937_64;

/// Symmetric Local Lemma condition e·p·(D+1) ≤ 1.
[[nodiscard]] bool lll_feasible(double p, std::uint64_t dependency_degree);

/// Parameters of a binomial tail query. With `capped` set, `n` is a real cap
/// k on the number of Bernoulli trials, each succeeding with probability at
/// most `p`; the admissible range of t is then [0, ⌊k⌋·p].
struct TailBoundQuery {
    double n = 0;
    double p = 0;
    double t = 0;
    bool capped = false;
};

class TailBoundError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bound on Pr(X > np + t): e^{-t²/(3np)}.
[[nodiscard]] double chernoff_upper(const TailBoundQuery& q);
/// Bound on Pr(X < np - t): e^{-t²/(2np)}.
[[nodiscard]] double chernoff_lower(const TailBoundQuery& q);

enum class ResampleScope { global_restart, local_resample };

struct ResamplePolicy {
    std::size_t max_restarts = 100;
    ResampleScope scope = ResampleScope::global_restart;
};

/// Shared base so callers can catch the failure without knowing the
/// candidate type.
class RestartLimitError : public std::runtime_error {
public:
    RestartLimitError(std::size_t restarts, std::size_t best_violations)
        : std::runtime_error("restart limit exceeded after " + std::to_string(restarts)
              + " restarts (best candidate had " + std::to_string(best_violations) + " violations)")
        , restarts(restarts)
        , best_violations(best_violations)
    {
    }
    std::size_t restarts;
    std::size_t best_violations;
};

template <class Candidate>
class RestartLimitExceeded : public RestartLimitError {
public:
    RestartLimitExceeded(std::size_t restarts, std::size_t best_violations, Candidate best)
        : RestartLimitError(restarts, best_violations)
        , best(std::move(best))
    {
    }
    Candidate best;
};

template <class Candidate>
struct ResampleResult {
    Candidate candidate;
    /// Global scope: number of full redraws. Local scope: number of
    /// violated locations whose variables were redrawn.
    std::size_t restarts = 0;
};

/// Draws candidates until `violated` reports no bad locations.
///
/// `draw(rng)` produces a fresh candidate, `violated(candidate)` lists the
/// locations whose bad event occurred, and `redraw(candidate, locations, rng)`
/// redraws only the random choices those locations depend on. Global scope
/// ignores `redraw` and starts over each time.
template <class Draw, class Violated, class Redraw>
auto resample(Draw&& draw, Violated&& violated, Redraw&& redraw, const ResamplePolicy& policy, Rng& rng)
    -> ResampleResult<decltype(draw(rng))>
{
    using Candidate = decltype(draw(rng));
    if (policy.max_restarts < 1)
        throw std::invalid_argument("resample policy needs at least one restart");

    ResampleResult<Candidate> result{draw(rng), 0};
    std::vector<std::size_t> bad = violated(result.candidate);
    Candidate best = result.candidate;
    std::size_t best_count = bad.size();

    while (!bad.empty()) {
        if (bad.size() < best_count) {
            best = result.candidate;
            best_count = bad.size();
        }
        if (policy.scope == ResampleScope::global_restart) {
            if (result.restarts >= policy.max_restarts)
                throw RestartLimitExceeded<Candidate>(result.restarts, best_count, std::move(best));
            ++result.restarts;
            result.candidate = draw(rng);
        } else {
            if (result.restarts + bad.size() > policy.max_restarts)
                throw RestartLimitExceeded<Candidate>(result.restarts, best_count, std::move(best));
            result.restarts += bad.size();
            redraw(result.candidate, std::span<const std::size_t>(bad), rng);
        }
        bad = violated(result.candidate);
    }
    return result;
}

/// Global-restart only.
template <class Draw, class Violated>
auto resample(Draw&& draw, Violated&& violated, std::size_t max_restarts, Rng& rng)
    -> ResampleResult<decltype(draw(rng))>
{
    using Candidate = decltype(draw(rng));
    auto no_local = [](Candidate&, std::span<const std::size_t>, Rng&) {};
    return resample(std::forward<Draw>(draw), std::forward<Violated>(violated), no_local,
        ResamplePolicy{max_restarts, ResampleScope::global_restart}, rng);
}

} // namespace nsd
