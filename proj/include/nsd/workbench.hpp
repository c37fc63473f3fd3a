#pragma once

#include "nsd/colouring.hpp"
#include "nsd/graph.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsd {

// ---------------------------------------------------------------------------
// Generators

class GeneratorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Family { complete, cycle, path, star, gnp, random_regular };

[[nodiscard]] std::string_view to_string(Family family);
[[nodiscard]] Family parse_family(std::string_view text);

struct GenerateParams {
    int n = 0;      // vertices; for star, the number of leaves
    int d = 0;      // random-regular degree
    double p = 0.0; // gnp edge probability
    int max_attempts = 1000; // random-regular matching restarts allowed
};

[[nodiscard]] Graph complete_graph(int n);
[[nodiscard]] Graph cycle_graph(int n);
[[nodiscard]] Graph path_graph(int n);
/// Centre 0 joined to leaves 1..leaves.
[[nodiscard]] Graph star_graph(int leaves);
[[nodiscard]] Graph gnp_graph(int n, double p, std::uint64_t seed);
/// Pairing model: d points per vertex are matched one random pair at a
/// time, pairs that would form a loop or a repeated edge are rejected, and
/// the whole matching restarts when no admissible pair is left.
[[nodiscard]] Graph random_regular_graph(int n, int d, std::uint64_t seed, int max_attempts = 1000);

[[nodiscard]] Graph generate(Family family, const GenerateParams& params, std::uint64_t seed);

/// One representative per isomorphism class of connected graphs on n
/// vertices (1 ≤ n ≤ 6), ordered by edge count then canonical code.
[[nodiscard]] std::vector<Graph> connected_graphs(int n);

/// True when g is a cycle on five vertices.
[[nodiscard]] bool is_c5(const Graph& g);

// ---------------------------------------------------------------------------
// Greedy repair

class GreedyRepairFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GreedyRepairResult {
    TotalColouring colouring;
    int sweeps = 0;
};

/// Starts from the Δ+1 initial colouring and sweeps over the conflicting
/// edges, moving one element at a conflict end to the smallest colour that
/// keeps the colouring proper and separates the sums. Stops when the
/// verifier passes; throws after `max_sweeps` sweeps.
[[nodiscard]] GreedyRepairResult greedy_repair(const Graph& g, Mode mode, int max_sweeps = 200);

// ---------------------------------------------------------------------------
// Bench

enum class Method { exact, pipeline, greedy_fallback };

[[nodiscard]] std::string_view to_string(Method method);
[[nodiscard]] Method parse_method(std::string_view text);

struct BenchRow {
    std::string id;
    int n = 0;
    int m = 0;
    int delta = 0;
    Mode mode = Mode::edge;
    Method method = Method::exact;
    Colour colours = 0;     // 0 when the row failed
    Colour abs_bound = 0;   // Δ + ⌊95√Δ⌋
    Colour rel_bound = 0;   // m' + 4B, pipeline rows only
    bool verified = false;
    double runtime_ms = 0;  // kept to three decimals
    std::size_t restarts = 0;
    std::uint64_t seed = 0;
    std::string note;       // failure or conjecture remark; text table only

    [[nodiscard]] bool same_csv_fields(const BenchRow& other) const;
};

struct BenchCase {
    std::string id;
    std::optional<Family> family;
    GenerateParams params;
    std::string file;
    Mode mode = Mode::edge;
    Method method = Method::exact;
    std::uint64_t seed = 0;
    std::string profile = "desk";
    std::uint64_t node_limit = 100'000'000;
};

class BenchSpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One instance per line of whitespace separated key=value tokens:
///   id=c5 family=cycle n=5 mode=edge,total method=exact seed=1,2
///   id=big file=graphs/x.g6 method=pipeline profile=desk
/// Comma lists in mode, method and seed expand to every combination.
[[nodiscard]] std::vector<BenchCase> parse_bench_spec(std::string_view text);

[[nodiscard]] BenchRow run_bench_case(const BenchCase& bench_case);
/// Runs every case with at most `jobs` worker threads; rows keep spec order.
[[nodiscard]] std::vector<BenchRow> run_bench(const std::vector<BenchCase>& cases, int jobs = 1);

inline constexpr std::string_view bench_csv_header
    = "id,n,m,delta,mode,method,colours,abs_bound,rel_bound,verified,runtime_ms,restarts,seed";

[[nodiscard]] std::string bench_csv(const std::vector<BenchRow>& rows);
[[nodiscard]] std::vector<BenchRow> parse_bench_csv(std::string_view text);
[[nodiscard]] std::string bench_table(const std::vector<BenchRow>& rows);

// ---------------------------------------------------------------------------
// Command line

/// Entry point of the nsd tool; returns the process exit code.
int run_cli(int argc, char** argv);

} // namespace nsd
