#pragma once

#include "nsd/graph.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nsd {

using Colour = std::int64_t;
using Sum = std::int64_t;

/// Edge mode keeps every vertex colour at 0, so total sums coincide with
/// weighted degrees and the same machinery serves both problems.
enum class Mode { edge, total };

[[nodiscard]] std::string_view to_string(Mode mode);
[[nodiscard]] Mode parse_mode(std::string_view text);

struct TotalColouring {
    Mode mode = Mode::edge;
    std::vector<Colour> vertex; // one per host vertex
    std::vector<Colour> edge;   // one per host edge, indexed by EdgeId

    TotalColouring() = default;
    /// All-zero colouring sized for g; a placeholder until colours are assigned.
    TotalColouring(const Graph& g, Mode m);

    [[nodiscard]] Colour max_colour() const;

    friend bool operator==(const TotalColouring&, const TotalColouring&) = default;
};

class ColouringError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sum of colours on edges incident to v.
[[nodiscard]] Sum weighted_degree(const Graph& g, const TotalColouring& c, Vertex v);
/// c(v) plus the weighted degree.
[[nodiscard]] Sum total_sum(const Graph& g, const TotalColouring& c, Vertex v);
/// total_sum for every vertex at once.
[[nodiscard]] std::vector<Sum> total_sums(const Graph& g, const TotalColouring& c);

[[nodiscard]] bool is_proper(const Graph& g, const TotalColouring& c);

struct Violation {
    enum class Kind { edge_edge, vertex_vertex, vertex_edge, colour_range };
    Kind kind;
    int first;  // edge or vertex id depending on kind
    int second; // -1 for colour_range
};

struct SumConflict {
    Vertex u;
    Vertex v;
    Sum sum;
};

struct VerificationReport {
    std::vector<Violation> violations;
    std::vector<SumConflict> conflicts;
    Colour max_colour = 0;
    bool pass = false;

    [[nodiscard]] std::string summary() const;
};

/// Checks properness, the colour ranges required by the mode, and sum
/// distinction across every edge. All problems are collected.
[[nodiscard]] VerificationReport verify_nsd(const Graph& g, const TotalColouring& c);

/// Text form:
///   nsd <mode> n=<n> m=<m> maxcolour=<k>
///   v <id> <colour>        (total mode only, ascending id)
///   e <u> <v> <colour>     (edge id order)
[[nodiscard]] std::string write_colouring(const Graph& g, const TotalColouring& c);
[[nodiscard]] TotalColouring read_colouring(const Graph& g, std::string_view text);

} // namespace nsd
