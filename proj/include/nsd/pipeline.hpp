#pragma once

#include "nsd/colouring.hpp"
#include "nsd/graph.hpp"
#include "nsd/prob.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nsd {

// ---------------------------------------------------------------------------
// Constants

/// Every numeric constant of the construction. The paper preset keeps the
/// published values; the desk preset is tuned so that the construction runs
/// end to end at Δ in [64, 512].
struct Profile {
    std::string name = "paper";
    double small_frac = 0.25;           // V_S: d ≤ Δ·small_frac
    double large_frac = 1.0 / 32.0;     // V_L: d ≥ Δ·large_frac
    double medium_exponent = 0.5;       // V_M: d ≥ Δ^medium_exponent + 1
    double sampling_coef = 6.0;         // base subgraph edge probability coef/√Δ
    double b_coef1 = 23.0;              // B = ⌈b_coef1·√Δ + b_coef2·Δ^(1/3)⌉
    double b_coef2 = 3.0;
    double aux_slack_exponent = 1.0 / 3.0; // concentration slack Δ^aux_slack_exponent
    double slack_coef = 1.0;            // multiplier on that slack for the base subgraph
    int min_delta = 64;
    ResampleScope aux_scope = ResampleScope::global_restart;
    ResampleScope base_scope = ResampleScope::global_restart;
    std::size_t global_restarts = 100;
    std::size_t local_events_per_vertex = 10;

    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;

    [[nodiscard]] ResamplePolicy policy(ResampleScope scope, int vertex_count) const;

    static Profile paper();
    static Profile desk();
};

/// Applies "key=value" lines (blank lines and '#' comments skipped) on top of
/// `base`. Keys match the field names above; scopes are "global" or "local".
[[nodiscard]] Profile apply_overrides(Profile base, std::string_view text);
/// "paper", "desk", or a path to an override file (applied over paper, or
/// over the preset named by a "base=" line).
[[nodiscard]] Profile load_profile(std::string_view name_or_path);
[[nodiscard]] std::string to_text(const Profile& profile);

/// Δ^exponent, exact whenever Δ is a perfect square or cube and the exponent
/// is 1/2 or 1/3.
[[nodiscard]] double delta_power(int delta, double exponent);

// ---------------------------------------------------------------------------
// Errors

class PipelineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DeltaTooSmall : public PipelineError {
public:
    DeltaTooSmall(int delta, int min_delta)
        : PipelineError("maximum degree " + std::to_string(delta) + " below the profile minimum "
              + std::to_string(min_delta))
        , delta(delta)
        , min_delta(min_delta)
    {
    }
    int delta;
    int min_delta;
};

class InfeasibleProfile : public PipelineError {
public:
    using PipelineError::PipelineError;
};

class StageFailure : public PipelineError {
public:
    StageFailure(std::string stage, std::string diagnostics)
        : PipelineError(stage + ": " + diagnostics)
        , stage(std::move(stage))
        , diagnostics(std::move(diagnostics))
    {
    }
    std::string stage;
    std::string diagnostics;
};

// ---------------------------------------------------------------------------
// Trace

struct StageRecord {
    std::string stage;
    std::size_t restarts = 0;
    Colour palette = 0; // highest colour in use when the stage ended
    std::size_t modified_edges = 0;
    std::vector<std::pair<std::string, std::string>> details;

    void note(std::string key, std::string value) { details.emplace_back(std::move(key), std::move(value)); }
    [[nodiscard]] std::optional<std::string> detail(std::string_view key) const;
};

struct StageTrace {
    std::vector<StageRecord> stages;
    int delta = 0;
    Colour m0 = 0;      // highest colour of the initial colouring
    Colour m_prime = 0; // highest colour after small-degree preprocessing
    int B = 0;

    [[nodiscard]] Colour relative_bound() const { return m_prime + 4 * static_cast<Colour>(B); }
    [[nodiscard]] std::size_t total_restarts() const;
    [[nodiscard]] const StageRecord* find(std::string_view stage) const;

    /// One line per stage: "stage=<name> restarts=.. palette=.. modified=.. k=v ..".
    [[nodiscard]] std::string serialize() const;
};

// ---------------------------------------------------------------------------
// Stages

/// Proper edge colouring with at most Δ+1 colours (Misra–Gries).
[[nodiscard]] std::vector<Colour> vizing_edge_colouring(const Graph& g);

/// Vizing-style edge colours; in total mode each vertex then takes the
/// smallest colour unused on its incident edges and coloured neighbours.
[[nodiscard]] TotalColouring initial_colouring(const Graph& g, Mode mode);

struct Classification {
    int delta = 0;
    std::vector<bool> small;  // V_S
    std::vector<bool> medium; // V_M ⊆ V_S
    std::vector<bool> large;  // V_L
    SubgraphRef small_graph;  // G_S = G[V_S]
    std::vector<EdgeId> isolated; // E_I, isolated edges of G_S
    std::vector<Vertex> isolated_partner; // other end of the E_I edge at v, or -1

    [[nodiscard]] static std::vector<Vertex> members(const std::vector<bool>& mask);
};

[[nodiscard]] Classification classify(const Graph& g, const Profile& profile);

struct SampledSubgraph {
    SubgraphRef subgraph;
    std::size_t restarts = 0;
};

/// Largest admissible degree in the auxiliary graph: Δ^medium + Δ^aux + 1.
[[nodiscard]] double aux_degree_bound(int delta, const Profile& profile);

/// Every medium vertex picks one incident edge outside E_I uniformly; the
/// draw is repeated until no vertex exceeds aux_degree_bound.
[[nodiscard]] SampledSubgraph sample_aux_graph(const Graph& g, const Classification& cls, Rng& rng,
    const Profile& profile);

struct PreprocessResult {
    TotalColouring colouring;
    Colour m_prime = 0;
    std::size_t recoloured_aux = 0;
    std::size_t fixed_isolated = 0;
};

/// Recolours the auxiliary graph with fresh colours above the current
/// maximum so that E_I edges with a medium end become sum-distinguished, then
/// repairs the remaining E_I edges through one adjacent edge each.
[[nodiscard]] PreprocessResult preprocess_small(TotalColouring c, const Graph& g, const Classification& cls,
    const SubgraphRef& aux);

/// Acceptance thresholds for the base subgraph at a given Δ.
struct BaseBounds {
    double probability = 0;    // per-edge inclusion probability
    double slack = 0;          // slack_coef·Δ^aux
    double upper_all = 0;      // condition (I): d_H(v) ≤ p·Δ + slack for all v
    double upper_outside = 0;  // v ∉ V_L: d_H(v) ≤ p·Δ·large_frac + slack
    double lower_large = 0;    // condition (II): d_H(v) ≥ p·Δ·large_frac − slack on V_L
};

[[nodiscard]] BaseBounds base_bounds(int delta, const Profile& profile);

/// Keeps each edge touching V_L with probability min(1, coef/√Δ); repeated
/// until every vertex meets its concentration bound. Throws
/// InfeasibleProfile when the lower bound on V_L is not positive.
[[nodiscard]] SampledSubgraph sample_base_subgraph(const Graph& g, const Classification& cls, Rng& rng,
    const Profile& profile);

/// Locations violating the base-subgraph conditions (empty when accepted).
[[nodiscard]] std::vector<Vertex> base_violations(const SubgraphRef& h, const Classification& cls,
    const BaseBounds& bounds);

[[nodiscard]] int compute_B(int delta, const Profile& profile);

/// Gives every edge of h a colour in [m'+B+1, m'+2B] so that edges adjacent
/// in h differ modulo B and the ends of each E_I edge touching h stay
/// sum-distinct modulo B.
[[nodiscard]] TotalColouring recolour_mod_B(TotalColouring c, const SubgraphRef& h, int B, Colour m_prime,
    const Classification& cls);

/// Vertex sequence of h: each component contributes a reversed BFS order
/// from its smallest vertex, so every vertex but the last of its component
/// has a later neighbour.
struct VertexOrdering {
    std::vector<Vertex> sequence;
    std::vector<std::size_t> component_start; // offsets into sequence, one per component
};

[[nodiscard]] VertexOrdering build_ordering(const SubgraphRef& h);

/// The member {2iB+j, (2i+1)B+j} of the pair family that contains s,
/// returned as (low, high).
[[nodiscard]] std::pair<Sum, Sum> pair_of(Sum s, Sum B);

struct PairAssignment {
    Sum B = 0;
    std::vector<std::optional<Sum>> low; // low element of P_v, per vertex

    [[nodiscard]] bool assigned(Vertex v) const { return low.at(static_cast<std::size_t>(v)).has_value(); }
    [[nodiscard]] bool contains(Vertex v, Sum s) const;
};

struct DistinguishResult {
    TotalColouring colouring;
    PairAssignment pairs;
    std::size_t processed = 0;          // V_L vertices handled
    std::size_t modified_edges = 0;     // distinct edges whose colour changed
    int max_changes_per_edge = 0;
    std::size_t shared_pairs = 0;       // closing vertices sharing a pair with one neighbour
    std::size_t closing_bound_misses = 0; // closing edges above the same-residue bound
    std::size_t candidate_sums = 0;     // sums examined across all selections
};

[[nodiscard]] DistinguishResult distinguish_large(TotalColouring c, const Graph& g, const SubgraphRef& h,
    const VertexOrdering& order, int B, const Classification& cls);

struct FinalAdjustResult {
    TotalColouring colouring;
    std::size_t modified_edges = 0;
};

/// Walks the edges of G_S in id order and, where an end clashes with one of
/// its neighbours, moves the edge to the smallest colour in [1, ceiling]
/// that is proper and clears the clashes at both ends.
[[nodiscard]] FinalAdjustResult final_adjust(TotalColouring c, const Graph& g, const Classification& cls,
    Colour ceiling);

struct PipelineResult {
    TotalColouring colouring;
    StageTrace trace;
    VerificationReport report;
};

/// Δ + ⌊95√Δ⌋, reported for comparison only.
[[nodiscard]] Colour absolute_bound(int delta);

[[nodiscard]] PipelineResult run(const Graph& g, Mode mode, const Profile& profile, std::uint64_t seed);

} // namespace nsd
