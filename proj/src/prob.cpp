#include "nsd/prob.hpp"

#include <cmath>
#include <numbers>

namespace nsd {

bool lll_feasible(double p, std::uint64_t dependency_degree)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("probability outside [0,1]");
    return std::numbers::e * p * (static_cast<double>(dependency_degree) + 1.0) <= 1.0;
}

namespace {

    double checked_mean(const TailBoundQuery& q)
    {
        if (!(q.p >= 0.0 && q.p <= 1.0))
            throw TailBoundError("probability outside [0,1]");
        if (!(q.n >= 0.0) || (!q.capped && q.n != std::floor(q.n)))
            throw TailBoundError("trial count must be a non-negative integer");
        if (!(q.t >= 0.0))
            throw TailBoundError("deviation t must be non-negative");
        double limit = (q.capped ? std::floor(q.n) : q.n) * q.p;
        if (q.t > limit)
            throw TailBoundError("deviation t exceeds the admissible range");
        double mean = q.n * q.p;
        if (mean == 0.0 && q.t > 0.0)
            throw TailBoundError("zero mean with positive deviation");
        return mean;
    }

} // namespace

double chernoff_upper(const TailBoundQuery& q)
{
    double mean = checked_mean(q);
    if (q.t == 0.0)
        return 1.0;
    return std::exp(-(q.t * q.t) / (3.0 * mean));
}

double chernoff_lower(const TailBoundQuery& q)
{
    double mean = checked_mean(q);
    if (q.t == 0.0)
        return 1.0;
    return std::exp(-(q.t * q.t) / (2.0 * mean));
}

} // namespace nsd
