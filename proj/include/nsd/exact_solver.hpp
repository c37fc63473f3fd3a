#pragma once

#include "nsd/colouring.hpp"
#include "nsd/graph.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace nsd {

struct SolveOptions {
    std::uint64_t node_limit = 100'000'000;
};

struct SolveResult {
    int k = 0;
    TotalColouring witness;
    std::uint64_t nodes = 0;
};

/// The search ran out of nodes before it could decide; the answer is unknown.
class SearchLimitExceeded : public std::runtime_error {
public:
    SearchLimitExceeded(int k, std::uint64_t nodes)
        : std::runtime_error("node limit exceeded while testing k=" + std::to_string(k))
        , k(k)
        , nodes(nodes)
    {
    }
    int k;
    std::uint64_t nodes;
};

/// Exhaustive search for an NSD colouring with colours in {1..k}.
/// `nodes`, when given, accumulates the number of assignments tried.
[[nodiscard]] std::optional<TotalColouring> exists_colouring(const Graph& g, int k, Mode mode,
    const SolveOptions& options = {}, std::uint64_t* nodes = nullptr);

/// Least k admitting an NSD colouring, found by raising k from the
/// properness lower bound (Δ for edges, Δ+1 for total colourings).
[[nodiscard]] SolveResult chi_sigma(const Graph& g, Mode mode, const SolveOptions& options = {});

} // namespace nsd
