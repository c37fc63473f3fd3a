#include "nsd/colouring.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace nsd {

std::string_view to_string(Mode mode)
{
    return mode == Mode::edge ? "edge" : "total";
}

Mode parse_mode(std::string_view text)
{
    if (text == "edge")
        return Mode::edge;
    if (text == "total")
        return Mode::total;
    throw ColouringError("unknown mode '" + std::string(text) + "'");
}

TotalColouring::TotalColouring(const Graph& g, Mode m)
    : mode(m)
    , vertex(static_cast<std::size_t>(g.vertex_count()), 0)
    , edge(static_cast<std::size_t>(g.edge_count()), 0)
{
}

Colour TotalColouring::max_colour() const
{
    Colour best = 0;
    for (auto c : vertex)
        best = std::max(best, c);
    for (auto c : edge)
        best = std::max(best, c);
    return best;
}

namespace {

    void check_domain(const Graph& g, const TotalColouring& c)
    {
        if (c.vertex.size() != static_cast<std::size_t>(g.vertex_count())
            || c.edge.size() != static_cast<std::size_t>(g.edge_count()))
            throw ColouringError("colouring does not cover the graph");
    }

} // namespace

Sum weighted_degree(const Graph& g, const TotalColouring& c, Vertex v)
{
    check_domain(g, c);
    if (!g.contains(v))
        throw ColouringError("unknown vertex " + std::to_string(v));
    Sum s = 0;
    for (const auto& inc : g.incident(v))
        s += c.edge[static_cast<std::size_t>(inc.edge)];
    return s;
}

Sum total_sum(const Graph& g, const TotalColouring& c, Vertex v)
{
    auto s = weighted_degree(g, c, v);
    return c.mode == Mode::total ? s + c.vertex[static_cast<std::size_t>(v)] : s;
}

std::vector<Sum> total_sums(const Graph& g, const TotalColouring& c)
{
    check_domain(g, c);
    std::vector<Sum> sums(static_cast<std::size_t>(g.vertex_count()), 0);
    if (c.mode == Mode::total)
        std::copy(c.vertex.begin(), c.vertex.end(), sums.begin());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        sums[static_cast<std::size_t>(ed.u)] += c.edge[static_cast<std::size_t>(e)];
        sums[static_cast<std::size_t>(ed.v)] += c.edge[static_cast<std::size_t>(e)];
    }
    return sums;
}

namespace {

    std::vector<Violation> properness_violations(const Graph& g, const TotalColouring& c)
    {
        std::vector<Violation> out;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            auto vc = c.vertex[static_cast<std::size_t>(v)];
            if (c.mode == Mode::edge ? vc != 0 : vc < 1)
                out.push_back({Violation::Kind::colour_range, v, -1});
        }
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (c.edge[static_cast<std::size_t>(e)] < 1)
                out.push_back({Violation::Kind::colour_range, e, -1});

        std::vector<std::pair<Colour, EdgeId>> around;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            around.clear();
            for (const auto& inc : g.incident(v))
                around.emplace_back(c.edge[static_cast<std::size_t>(inc.edge)], inc.edge);
            std::sort(around.begin(), around.end());
            for (std::size_t i = 1; i < around.size(); ++i)
                if (around[i].first == around[i - 1].first)
                    out.push_back({Violation::Kind::edge_edge, around[i - 1].second, around[i].second});
            if (c.mode != Mode::total)
                continue;
            auto vc = c.vertex[static_cast<std::size_t>(v)];
            for (const auto& inc : g.incident(v)) {
                if (c.edge[static_cast<std::size_t>(inc.edge)] == vc)
                    out.push_back({Violation::Kind::vertex_edge, v, inc.edge});
                if (inc.neighbour > v && vc == c.vertex[static_cast<std::size_t>(inc.neighbour)])
                    out.push_back({Violation::Kind::vertex_vertex, v, inc.neighbour});
            }
        }
        return out;
    }

} // namespace

bool is_proper(const Graph& g, const TotalColouring& c)
{
    check_domain(g, c);
    for (const auto& v : properness_violations(g, c))
        if (v.kind != Violation::Kind::colour_range)
            return false;
    return true;
}

VerificationReport verify_nsd(const Graph& g, const TotalColouring& c)
{
    check_domain(g, c);
    VerificationReport report;
    report.violations = properness_violations(g, c);
    auto sums = total_sums(g, c);
    for (const auto& e : g.edges()) {
        auto su = sums[static_cast<std::size_t>(e.u)];
        if (su == sums[static_cast<std::size_t>(e.v)])
            report.conflicts.push_back({e.u, e.v, su});
    }
    report.max_colour = c.max_colour();
    report.pass = report.violations.empty() && report.conflicts.empty();
    return report;
}

std::string VerificationReport::summary() const
{
    std::ostringstream out;
    out << (pass ? "pass" : "fail") << " violations=" << violations.size() << " conflicts=" << conflicts.size()
        << " maxcolour=" << max_colour;
    return out.str();
}

std::string write_colouring(const Graph& g, const TotalColouring& c)
{
    check_domain(g, c);
    std::ostringstream out;
    out << "nsd " << to_string(c.mode) << " n=" << g.vertex_count() << " m=" << g.edge_count()
        << " maxcolour=" << c.max_colour() << '\n';
    if (c.mode == Mode::total)
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            out << "v " << v << ' ' << c.vertex[static_cast<std::size_t>(v)] << '\n';
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        out << "e " << g.edge(e).u << ' ' << g.edge(e).v << ' ' << c.edge[static_cast<std::size_t>(e)] << '\n';
    return out.str();
}

namespace {

    long long to_int(std::string_view tok, const std::string& where)
    {
        long long value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ColouringError(where + ": expected integer, got '" + std::string(tok) + "'");
        return value;
    }

    long long keyed_int(std::string_view tok, std::string_view key)
    {
        if (!tok.starts_with(key) || tok.size() <= key.size() || tok[key.size()] != '=')
            throw ColouringError("header: expected " + std::string(key) + "=<value>");
        return to_int(tok.substr(key.size() + 1), "header");
    }

} // namespace

TotalColouring read_colouring(const Graph& g, std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line))
        throw ColouringError("empty colouring text");
    std::istringstream header(line);
    std::string magic, mode_text, n_tok, m_tok, k_tok, extra;
    header >> magic >> mode_text >> n_tok >> m_tok >> k_tok;
    if (magic != "nsd" || k_tok.empty() || (header >> extra))
        throw ColouringError("header: expected 'nsd <mode> n=<n> m=<m> maxcolour=<k>'");
    TotalColouring c(g, parse_mode(mode_text));
    if (keyed_int(n_tok, "n") != g.vertex_count() || keyed_int(m_tok, "m") != g.edge_count())
        throw ColouringError("header does not match graph size");
    auto declared_max = keyed_int(k_tok, "maxcolour");

    std::vector<bool> seen_vertex(c.vertex.size(), false), seen_edge(c.edge.size(), false);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        auto where = "line " + std::to_string(line_no);
        std::istringstream fields(line);
        std::string tag, a, b, col;
        fields >> tag;
        if (tag == "v") {
            if (c.mode != Mode::total)
                throw ColouringError(where + ": vertex colours only appear in total mode");
            fields >> a >> col;
            auto v = to_int(a, where);
            if (!g.contains(static_cast<Vertex>(v)) || seen_vertex[static_cast<std::size_t>(v)])
                throw ColouringError(where + ": bad or repeated vertex");
            seen_vertex[static_cast<std::size_t>(v)] = true;
            c.vertex[static_cast<std::size_t>(v)] = to_int(col, where);
        } else if (tag == "e") {
            fields >> a >> b >> col;
            auto e = g.find_edge(static_cast<Vertex>(to_int(a, where)), static_cast<Vertex>(to_int(b, where)));
            if (!e || seen_edge[static_cast<std::size_t>(*e)])
                throw ColouringError(where + ": bad or repeated edge");
            seen_edge[static_cast<std::size_t>(*e)] = true;
            c.edge[static_cast<std::size_t>(*e)] = to_int(col, where);
        } else {
            throw ColouringError(where + ": unknown record '" + tag + "'");
        }
        if (fields >> extra)
            throw ColouringError(where + ": trailing data");
    }
    if (std::find(seen_edge.begin(), seen_edge.end(), false) != seen_edge.end()
        || (c.mode == Mode::total && std::find(seen_vertex.begin(), seen_vertex.end(), false) != seen_vertex.end()))
        throw ColouringError("colouring text does not cover every element");
    if (c.max_colour() != declared_max)
        throw ColouringError("maxcolour in header does not match the colours listed");
    return c;
}

} // namespace nsd
