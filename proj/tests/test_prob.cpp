#include "nsd/prob.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace nsd;

TEST_CASE("local lemma condition")
{
    CHECK(lll_feasible(0.0, 0));
    CHECK(lll_feasible(0.0, 1'000'000));
    CHECK_FALSE(lll_feasible(1.0, 0));
    CHECK(lll_feasible(1e-3, 102));
    CHECK(std::exp(1.0) * 1e-3 * 102 == doctest::Approx(0.2773).epsilon(1e-3));
    CHECK(lll_feasible(1e-3, 102) == oracle::lll(1e-3, 102));
    CHECK_THROWS_AS((void)lll_feasible(-0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)lll_feasible(1.5, 1), std::invalid_argument);
}

TEST_CASE("chernoff bounds")
{
    CHECK(chernoff_upper({100, 0.5, 0}) == 1.0);
    double v = chernoff_upper({100, 0.5, 10});
    CHECK(v == doctest::Approx(oracle::chernoff_upper(100, 0.5, 10)).epsilon(1e-12));
    CHECK(v == doctest::Approx(0.5134).epsilon(1e-4));
    CHECK(chernoff_lower({100, 0.5, 10}) == doctest::Approx(oracle::chernoff_lower(100, 0.5, 10)).epsilon(1e-12));

    CHECK_THROWS_AS((void)chernoff_upper({100, 0.5, 51}), TailBoundError);
    CHECK_THROWS_AS((void)chernoff_upper({100, 1.5, 1}), TailBoundError);
    CHECK_THROWS_AS((void)chernoff_upper({10.5, 0.5, 1}), TailBoundError);
    CHECK_THROWS_AS((void)chernoff_upper({100, 0.5, -1}), TailBoundError);
}

TEST_CASE("capped chernoff form")
{
    // at most k = √Δ trials, each with probability at most q = 1/√Δ
    double delta = 50;
    double k = std::sqrt(delta);
    double q = 1 / std::sqrt(delta);
    double t = 0.5;
    TailBoundQuery query{k, q, t, true};
    CHECK(chernoff_upper(query) == doctest::Approx(std::exp(-t * t / (3 * k * q))).epsilon(1e-12));
    // ⌊k⌋·q bounds t
    CHECK_THROWS_AS((void)chernoff_upper({k, q, std::floor(k) * q + 0.01, true}), TailBoundError);
    CHECK_NOTHROW((void)chernoff_upper({k, q, std::floor(k) * q, true}));
}

TEST_CASE("resample returns the first acceptable draw")
{
    Rng rng(1);
    int draws = 0;
    auto r = resample([&](Rng&) { return ++draws; }, [](int) { return std::vector<std::size_t>{}; }, 100, rng);
    CHECK(r.candidate == 1);
    CHECK(r.restarts == 0);
}

TEST_CASE("resample gives up at the cap")
{
    Rng rng(1);
    int draws = 0;
    auto never = [](int) { return std::vector<std::size_t>{0}; };
    try {
        (void)resample([&](Rng&) { return ++draws; }, never, 5, rng);
        FAIL("expected RestartLimitExceeded");
    } catch (const RestartLimitExceeded<int>& err) {
        CHECK(err.restarts == 5);
        CHECK(draws == 6);
        CHECK(err.best_violations == 1);
    }
    CHECK_THROWS_AS((void)resample([](Rng&) { return 0; }, never, 0, rng), std::invalid_argument);
}

TEST_CASE("resample is reproducible for a fixed seed")
{
    auto count = [](std::uint64_t seed) {
        Rng rng(seed);
        auto coin = [](Rng& r) { return static_cast<int>(r() & 1U); };
        auto tails = [](int c) { return c ? std::vector<std::size_t>{} : std::vector<std::size_t>{0}; };
        return resample(coin, tails, 1000, rng).restarts;
    };
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK(count(seed) == count(seed));
}

TEST_CASE("local resampling only redraws the bad locations")
{
    // Ten coins, each location bad while its coin shows tails.
    using Coins = std::vector<int>;
    Rng rng(3);
    auto draw = [](Rng& r) {
        Coins c(10);
        for (auto& x : c)
            x = static_cast<int>(r() & 1U);
        return c;
    };
    auto violated = [](const Coins& c) {
        std::vector<std::size_t> bad;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!c[i])
                bad.push_back(i);
        return bad;
    };
    std::size_t redrawn = 0;
    auto redraw = [&](Coins& c, std::span<const std::size_t> bad, Rng& r) {
        for (auto i : bad)
            c[i] = static_cast<int>(r() & 1U);
        redrawn += bad.size();
    };
    auto result = resample(draw, violated, redraw, {1000, ResampleScope::local_resample}, rng);
    CHECK(violated(result.candidate).empty());
    CHECK(result.restarts == redrawn);
}
