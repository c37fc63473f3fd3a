#include "nsd/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace nsd {

Graph::Graph(int n, std::span<const std::pair<Vertex, Vertex>> edges)
{
    if (n < 0)
        throw GraphError("negative vertex count");
    adjacency_.resize(static_cast<std::size_t>(n));
    edges_.reserve(edges.size());
    std::set<std::pair<Vertex, Vertex>> seen;
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw GraphError("vertex id out of range in edge " + std::to_string(a) + " " + std::to_string(b));
        if (a == b)
            throw GraphError("loop at vertex " + std::to_string(a));
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second)
            throw GraphError("duplicate edge " + std::to_string(key.first) + " " + std::to_string(key.second));
        auto id = static_cast<EdgeId>(edges_.size());
        edges_.push_back({key.first, key.second});
        adjacency_[static_cast<std::size_t>(a)].push_back({b, id});
        adjacency_[static_cast<std::size_t>(b)].push_back({a, id});
    }
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const
{
    if (!contains(u) || !contains(v))
        return std::nullopt;
    if (degree(u) > degree(v))
        std::swap(u, v);
    for (const auto& inc : incident(u))
        if (inc.neighbour == v)
            return inc.edge;
    return std::nullopt;
}

bool operator==(const Graph& a, const Graph& b)
{
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
        return false;
    auto sorted = [](const std::vector<Edge>& edges) {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (const auto& e : edges)
            out.emplace_back(e.u, e.v);
        std::sort(out.begin(), out.end());
        return out;
    };
    return sorted(a.edges_) == sorted(b.edges_);
}

int max_degree(const Graph& g)
{
    int best = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        best = std::max(best, g.degree(v));
    return best;
}

SubgraphRef::SubgraphRef(const Graph& host, std::vector<EdgeId> edges)
    : host_(&host)
    , edges_(std::move(edges))
{
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (auto e : edges_)
        if (e < 0 || e >= host.edge_count())
            throw GraphError("subgraph edge " + std::to_string(e) + " not in host graph");
}

SubgraphRef SubgraphRef::induced(const Graph& host, const std::vector<bool>& vertex_mask)
{
    std::vector<EdgeId> picked;
    for (EdgeId e = 0; e < host.edge_count(); ++e) {
        const auto& ed = host.edge(e);
        if (vertex_mask.at(static_cast<std::size_t>(ed.u)) && vertex_mask.at(static_cast<std::size_t>(ed.v)))
            picked.push_back(e);
    }
    return {host, std::move(picked)};
}

SubgraphRef SubgraphRef::whole(const Graph& host)
{
    std::vector<EdgeId> all(static_cast<std::size_t>(host.edge_count()));
    std::iota(all.begin(), all.end(), 0);
    return {host, std::move(all)};
}

std::vector<int> SubgraphRef::degrees() const
{
    std::vector<int> deg(host_ ? static_cast<std::size_t>(host_->vertex_count()) : 0, 0);
    for (auto e : edges_) {
        const auto& ed = host_->edge(e);
        ++deg[static_cast<std::size_t>(ed.u)];
        ++deg[static_cast<std::size_t>(ed.v)];
    }
    return deg;
}

std::vector<bool> SubgraphRef::edge_mask() const
{
    std::vector<bool> mask(host_ ? static_cast<std::size_t>(host_->edge_count()) : 0, false);
    for (auto e : edges_)
        mask[static_cast<std::size_t>(e)] = true;
    return mask;
}

std::vector<Vertex> SubgraphRef::vertices() const
{
    std::vector<Vertex> out;
    auto deg = degrees();
    for (std::size_t v = 0; v < deg.size(); ++v)
        if (deg[v] > 0)
            out.push_back(static_cast<Vertex>(v));
    return out;
}

std::vector<EdgeId> isolated_edges(const SubgraphRef& s)
{
    std::vector<EdgeId> out;
    if (s.empty())
        return out;
    auto deg = s.degrees();
    for (auto e : s.edges()) {
        const auto& ed = s.host().edge(e);
        if (deg[static_cast<std::size_t>(ed.u)] == 1 && deg[static_cast<std::size_t>(ed.v)] == 1)
            out.push_back(e);
    }
    return out;
}

std::vector<SubgraphRef> components(const SubgraphRef& s)
{
    std::vector<SubgraphRef> out;
    if (s.empty())
        return out;
    const auto& g = s.host();
    auto n = static_cast<std::size_t>(g.vertex_count());

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (auto e : s.edges()) {
        auto a = find(g.edge(e).u);
        auto b = find(g.edge(e).v);
        if (a != b)
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    // Roots are the smallest vertex of each component, so grouping by root
    // in ascending order gives the required component order.
    std::vector<std::vector<EdgeId>> by_root(n);
    for (auto e : s.edges())
        by_root[static_cast<std::size_t>(find(g.edge(e).u))].push_back(e);
    for (auto& group : by_root)
        if (!group.empty())
            out.emplace_back(g, std::move(group));
    return out;
}

namespace {

    std::string_view trim(std::string_view s)
    {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
            s.remove_suffix(1);
        return s;
    }

    std::vector<std::string_view> split_ws(std::string_view s)
    {
        std::vector<std::string_view> out;
        std::size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
                ++i;
            auto start = i;
            while (i < s.size() && s[i] != ' ' && s[i] != '\t')
                ++i;
            if (i > start)
                out.push_back(s.substr(start, i - start));
        }
        return out;
    }

    long long parse_int(std::string_view tok, int line_no)
    {
        long long value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected integer, got '" + std::string(tok) + "'");
        return value;
    }

} // namespace

Graph parse_graph6(std::string_view text)
{
    text = trim(text);
    constexpr std::string_view header = ">>graph6<<";
    if (text.starts_with(header))
        text.remove_prefix(header.size());
    if (text.empty())
        throw ParseError("graph6: empty input");
    for (char ch : text)
        if (ch < 63 || ch > 126)
            throw ParseError(std::string("graph6: invalid character '") + ch + "'");

    std::size_t pos = 0;
    auto take = [&](std::size_t count) {
        if (pos + count > text.size())
            throw ParseError("graph6: truncated size field");
        std::uint64_t value = 0;
        for (std::size_t i = 0; i < count; ++i)
            value = (value << 6) | static_cast<std::uint64_t>(text[pos++] - 63);
        return value;
    };

    std::uint64_t n = 0;
    if (text[0] != 126) {
        n = take(1);
    } else if (text.size() > 1 && text[1] != 126) {
        pos = 1;
        n = take(3);
        if (n < 63)
            throw ParseError("graph6: non-canonical 4-byte size field");
    } else {
        pos = 2;
        n = take(6);
        if (n < 258048)
            throw ParseError("graph6: non-canonical 8-byte size field");
    }
    if (n > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw ParseError("graph6: vertex count too large");

    std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::uint64_t needed = (bits + 5) / 6;
    if (text.size() - pos != needed)
        throw ParseError("graph6: expected " + std::to_string(needed) + " data bytes, got "
            + std::to_string(text.size() - pos));

    std::vector<std::pair<Vertex, Vertex>> edges;
    std::uint64_t k = 0;
    for (std::uint64_t j = 1; j < n; ++j) {
        for (std::uint64_t i = 0; i < j; ++i, ++k) {
            auto byte = static_cast<unsigned>(text[pos + k / 6] - 63);
            if ((byte >> (5 - k % 6)) & 1U)
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
    }
    // Padding bits must be zero.
    if (bits % 6 != 0) {
        auto last = static_cast<unsigned>(text.back() - 63);
        auto pad = 6 - bits % 6;
        if ((last & ((1U << pad) - 1)) != 0)
            throw ParseError("graph6: non-zero padding bits");
    }
    return Graph(static_cast<int>(n), edges);
}

Graph parse_edge_list(std::string_view text, std::optional<int> declared_n)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::optional<long long> header_n;
    long long max_id = -1;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto tokens = split_ws(line);
        if (tokens.size() == 2 && tokens[0] == "n") {
            if (header_n || !edges.empty())
                throw ParseError("line " + std::to_string(line_no) + ": vertex count must come first and once");
            header_n = parse_int(tokens[1], line_no);
            if (*header_n < 0)
                throw ParseError("line " + std::to_string(line_no) + ": negative vertex count");
            continue;
        }
        if (tokens.size() != 2)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
        auto a = parse_int(tokens[0], line_no);
        auto b = parse_int(tokens[1], line_no);
        if (a < 0 || b < 0 || a > std::numeric_limits<int>::max() || b > std::numeric_limits<int>::max())
            throw ParseError("line " + std::to_string(line_no) + ": vertex id out of range");
        max_id = std::max({max_id, a, b});
        edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }

    long long n = max_id + 1;
    if (header_n && declared_n && *header_n != *declared_n)
        throw ParseError("declared vertex count disagrees with header");
    if (header_n)
        n = *header_n;
    else if (declared_n)
        n = *declared_n;
    if (max_id >= n)
        throw ParseError("vertex id " + std::to_string(max_id) + " not below n=" + std::to_string(n));
    try {
        return Graph(static_cast<int>(n), edges);
    } catch (const ParseError&) {
        throw;
    } catch (const GraphError& err) {
        throw ParseError(err.what());
    }
}

Graph parse(std::string_view text, GraphFormat format)
{
    return format == GraphFormat::graph6 ? parse_graph6(text) : parse_edge_list(text);
}

std::string to_graph6(const Graph& g)
{
    std::string out;
    auto n = static_cast<std::uint64_t>(g.vertex_count());
    auto put = [&](std::uint64_t value, int groups) {
        for (int i = groups - 1; i >= 0; --i)
            out.push_back(static_cast<char>(63 + ((value >> (6 * i)) & 63U)));
    };
    if (n <= 62) {
        put(n, 1);
    } else if (n <= 258047) {
        out.push_back(126);
        put(n, 3);
    } else {
        out.append(2, static_cast<char>(126));
        put(n, 6);
    }
    std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::vector<unsigned char> data((bits + 5) / 6, 0);
    for (const auto& e : g.edges()) {
        auto i = static_cast<std::uint64_t>(e.u);
        auto j = static_cast<std::uint64_t>(e.v);
        auto k = j * (j - 1) / 2 + i;
        data[k / 6] |= static_cast<unsigned char>(1U << (5 - k % 6));
    }
    for (auto b : data)
        out.push_back(static_cast<char>(63 + b));
    return out;
}

std::string to_edge_list(const Graph& g)
{
    std::ostringstream out;
    out << "n " << g.vertex_count() << '\n';
    for (const auto& e : g.edges())
        out << e.u << ' ' << e.v << '\n';
    return out.str();
}

GraphFormat format_for_path(std::string_view path)
{
    return path.ends_with(".g6") ? GraphFormat::graph6 : GraphFormat::edge_list;
}

Graph read_graph_file(const std::string& path, std::optional<GraphFormat> format)
{
    std::ifstream in(path);
    if (!in)
        throw GraphError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), format.value_or(format_for_path(path)));
}

} // namespace nsd
