#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nsd {

using Vertex = int;
using EdgeId = int;

struct Edge {
    Vertex u;
    Vertex v;

    [[nodiscard]] Vertex other(Vertex x) const { return x == u ? v : u; }
};

/// One entry of an adjacency list: the neighbour and the edge leading to it.
struct Incidence {
    Vertex neighbour;
    EdgeId edge;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
public:
    using GraphError::GraphError;
};

/// Edge mode cannot distinguish the two ends of an isolated edge.
class IsolatedEdgeError : public GraphError {
public:
    explicit IsolatedEdgeError(EdgeId e)
        : GraphError("graph has an isolated edge (edge " + std::to_string(e) + ")")
        , edge(e)
    {
    }
    EdgeId edge;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Edges keep the index they were given at construction, so per-edge data
/// (colours, flags) can live in plain arrays indexed by EdgeId. Each stored
/// edge has u < v.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n, std::span<const std::pair<Vertex, Vertex>> edges = {});

    [[nodiscard]] int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }

    [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }

    [[nodiscard]] std::span<const Incidence> incident(Vertex v) const
    {
        return adjacency_.at(static_cast<std::size_t>(v));
    }
    [[nodiscard]] int degree(Vertex v) const { return static_cast<int>(incident(v).size()); }

    /// Edge joining u and v, if any. Linear in min(deg u, deg v).
    [[nodiscard]] std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
    [[nodiscard]] bool adjacent(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }

    [[nodiscard]] bool contains(Vertex v) const { return v >= 0 && v < vertex_count(); }

    /// Same vertex count and edge set; edge ids may differ.
    friend bool operator==(const Graph& a, const Graph& b);

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adjacency_;
};

[[nodiscard]] int max_degree(const Graph& g);

/// A subset of a host graph's edges. The vertex set is whatever those edges
/// touch. The host must outlive the reference.
class SubgraphRef {
public:
    SubgraphRef() = default;
    SubgraphRef(const Graph& host, std::vector<EdgeId> edges);

    /// All edges of the host with both ends selected by the mask.
    static SubgraphRef induced(const Graph& host, const std::vector<bool>& vertex_mask);
    static SubgraphRef whole(const Graph& host);

    [[nodiscard]] const Graph& host() const { return *host_; }
    [[nodiscard]] const std::vector<EdgeId>& edges() const { return edges_; }
    [[nodiscard]] bool empty() const { return edges_.empty(); }
    [[nodiscard]] std::size_t size() const { return edges_.size(); }

    /// Degree of every host vertex counted inside the subgraph.
    [[nodiscard]] std::vector<int> degrees() const;
    /// Membership flag per host edge.
    [[nodiscard]] std::vector<bool> edge_mask() const;
    /// Vertices touched by at least one edge, ascending.
    [[nodiscard]] std::vector<Vertex> vertices() const;

private:
    const Graph* host_ = nullptr;
    std::vector<EdgeId> edges_; // sorted ascending, unique
};

/// Edges of s whose two ends both have degree one inside s.
[[nodiscard]] std::vector<EdgeId> isolated_edges(const SubgraphRef& s);

/// Connected components of s as edge-disjoint subgraphs, ordered by the
/// smallest vertex id they contain.
[[nodiscard]] std::vector<SubgraphRef> components(const SubgraphRef& s);

enum class GraphFormat { graph6, edge_list };

[[nodiscard]] Graph parse_graph6(std::string_view text);

/// One "u v" pair per line with 0-based ids; blank lines and '#' comments are
/// skipped. An optional "n <count>" line declares the vertex count; otherwise
/// it is `declared_n` when given, else one more than the largest id seen.
[[nodiscard]] Graph parse_edge_list(std::string_view text, std::optional<int> declared_n = std::nullopt);

[[nodiscard]] Graph parse(std::string_view text, GraphFormat format);

[[nodiscard]] std::string to_graph6(const Graph& g);
/// Canonical edge-list text: "n <count>" then one line per edge in id order.
[[nodiscard]] std::string to_edge_list(const Graph& g);

/// graph6 for names ending in ".g6", edge list otherwise.
[[nodiscard]] GraphFormat format_for_path(std::string_view path);
[[nodiscard]] Graph read_graph_file(const std::string& path, std::optional<GraphFormat> format = std::nullopt);

} // namespace nsd
