#include "nsd/exact_solver.hpp"
#include "nsd/pipeline.hpp"
#include "nsd/workbench.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <thread>

namespace nsd {

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::exact: return "exact";
    case Method::pipeline: return "pipeline";
    case Method::greedy_fallback: return "greedy-fallback";
    }
    return "?";
}

Method parse_method(std::string_view text)
{
    for (auto m : {Method::exact, Method::pipeline, Method::greedy_fallback})
        if (to_string(m) == text)
            return m;
    throw BenchSpecError("unknown method '" + std::string(text) + "'");
}

bool BenchRow::same_csv_fields(const BenchRow& o) const
{
    return id == o.id && n == o.n && m == o.m && delta == o.delta && mode == o.mode && method == o.method
        && colours == o.colours && abs_bound == o.abs_bound && rel_bound == o.rel_bound && verified == o.verified
        && runtime_ms == o.runtime_ms && restarts == o.restarts && seed == o.seed;
}

namespace {

    std::vector<std::string_view> split(std::string_view text, char sep)
    {
        std::vector<std::string_view> out;
        while (true) {
            auto at = text.find(sep);
            out.push_back(text.substr(0, at));
            if (at == std::string_view::npos)
                return out;
            text.remove_prefix(at + 1);
        }
    }

    template <class T>
    T number(std::string_view text, std::string_view what)
    {
        T value{};
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw BenchSpecError("bad " + std::string(what) + " '" + std::string(text) + "'");
        return value;
    }

    bool plain_id(std::string_view id)
    {
        return !id.empty() && id.find_first_of(",\"\n\r") == std::string_view::npos;
    }

} // namespace

std::vector<BenchCase> parse_bench_spec(std::string_view text)
{
    std::vector<BenchCase> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream tokens(line);
        std::string token;
        BenchCase base;
        std::vector<Mode> modes{Mode::edge};
        std::vector<Method> methods{Method::exact};
        std::vector<std::uint64_t> seeds{0};
        bool any = false;
        try {
            while (tokens >> token) {
                any = true;
                auto eq = token.find('=');
                if (eq == std::string::npos)
                    throw BenchSpecError("expected key=value, got '" + token + "'");
                auto key = std::string_view(token).substr(0, eq);
                auto value = std::string_view(token).substr(eq + 1);
                if (key == "id")
                    base.id = value;
                else if (key == "family")
                    base.family = parse_family(value);
                else if (key == "file")
                    base.file = value;
                else if (key == "n")
                    base.params.n = number<int>(value, "n");
                else if (key == "d")
                    base.params.d = number<int>(value, "d");
                else if (key == "p")
                    base.params.p = number<double>(value, "p");
                else if (key == "attempts")
                    base.params.max_attempts = number<int>(value, "attempts");
                else if (key == "profile")
                    base.profile = value;
                else if (key == "node_limit")
                    base.node_limit = number<std::uint64_t>(value, "node_limit");
                else if (key == "mode") {
                    modes.clear();
                    for (auto part : split(value, ','))
                        modes.push_back(parse_mode(part));
                } else if (key == "method") {
                    methods.clear();
                    for (auto part : split(value, ','))
                        methods.push_back(parse_method(part));
                } else if (key == "seed") {
                    seeds.clear();
                    for (auto part : split(value, ','))
                        seeds.push_back(number<std::uint64_t>(part, "seed"));
                } else
                    throw BenchSpecError("unknown key '" + std::string(key) + "'");
            }
            if (!any)
                continue;
            if (base.family.has_value() == !base.file.empty())
                throw BenchSpecError("give exactly one of family= and file=");
        } catch (const std::exception& err) {
            throw BenchSpecError("bench spec line " + std::to_string(line_no) + ": " + err.what());
        }
        if (base.id.empty())
            base.id = base.family ? std::string(to_string(*base.family)) + "-" + std::to_string(base.params.n)
                                  : std::filesystem::path(base.file).filename().string();
        if (!plain_id(base.id))
            throw BenchSpecError("bench spec line " + std::to_string(line_no) + ": id must not contain commas or quotes");
        for (auto mode : modes)
            for (auto method : methods)
                for (auto seed : seeds) {
                    auto c = base;
                    c.mode = mode;
                    c.method = method;
                    c.seed = seed;
                    out.push_back(std::move(c));
                }
    }
    return out;
}

BenchRow run_bench_case(const BenchCase& bc)
{
    BenchRow row;
    row.id = bc.id;
    row.mode = bc.mode;
    row.method = bc.method;
    row.seed = bc.seed;
    auto start = std::chrono::steady_clock::now();
    try {
        Graph g = bc.family ? generate(*bc.family, bc.params, bc.seed) : read_graph_file(bc.file);
        row.n = g.vertex_count();
        row.m = g.edge_count();
        row.delta = max_degree(g);
        row.abs_bound = absolute_bound(row.delta);

        TotalColouring colouring;
        switch (bc.method) {
        case Method::exact: {
            auto solved = chi_sigma(g, bc.mode, SolveOptions{bc.node_limit});
            colouring = std::move(solved.witness);
            break;
        }
        case Method::pipeline: {
            auto result = run(g, bc.mode, load_profile(bc.profile), bc.seed);
            row.rel_bound = result.trace.relative_bound();
            row.restarts = result.trace.total_restarts();
            colouring = std::move(result.colouring);
            break;
        }
        case Method::greedy_fallback:
            colouring = greedy_repair(g, bc.mode).colouring;
            break;
        }

        auto report = verify_nsd(g, colouring);
        row.verified = report.pass;
        if (report.pass) {
            row.colours = report.max_colour;
            if (bc.method == Method::exact) {
                Colour conjectured = row.delta + (bc.mode == Mode::edge ? 2 : 3);
                if (row.colours > conjectured)
                    row.note = "exceeds delta+" + std::to_string(conjectured - row.delta)
                        + (bc.mode == Mode::edge && is_c5(g) ? " (C5, the known exception)" : " (conjecture counterexample?)");
            }
        } else {
            row.note = "verification failed: " + report.summary();
        }
    } catch (const std::exception& err) {
        row.verified = false;
        row.colours = 0;
        row.note = err.what();
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    row.runtime_ms = std::round(ms * 1000.0) / 1000.0;
    return row;
}

std::vector<BenchRow> run_bench(const std::vector<BenchCase>& cases, int jobs)
{
    std::vector<BenchRow> rows(cases.size());
    auto workers = static_cast<std::size_t>(std::max(1, jobs));
    workers = std::min(workers, std::max<std::size_t>(1, cases.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (auto i = next++; i < cases.size(); i = next++)
            rows[i] = run_bench_case(cases[i]);
    };
    if (workers == 1) {
        work();
        return rows;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(work);
    pool.clear();
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows)
{
    std::ostringstream out;
    out << bench_csv_header << '\n';
    char runtime[64];
    for (const auto& r : rows) {
        std::snprintf(runtime, sizeof runtime, "%.3f", r.runtime_ms);
        out << r.id << ',' << r.n << ',' << r.m << ',' << r.delta << ',' << to_string(r.mode) << ','
            << to_string(r.method) << ',' << r.colours << ',' << r.abs_bound << ',' << r.rel_bound << ','
            << (r.verified ? 1 : 0) << ',' << runtime << ',' << r.restarts << ',' << r.seed << '\n';
    }
    return out.str();
}

std::vector<BenchRow> parse_bench_csv(std::string_view text)
{
    std::vector<BenchRow> rows;
    auto lines = split(text, '\n');
    if (lines.empty() || lines.front() != bench_csv_header)
        throw BenchSpecError("CSV header mismatch");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto line = lines[i];
        if (line.empty())
            continue;
        auto f = split(line, ',');
        if (f.size() != 13)
            throw BenchSpecError("CSV line " + std::to_string(i + 1) + ": expected 13 fields");
        BenchRow r;
        r.id = f[0];
        r.n = number<int>(f[1], "n");
        r.m = number<int>(f[2], "m");
        r.delta = number<int>(f[3], "delta");
        r.mode = parse_mode(f[4]);
        r.method = parse_method(f[5]);
        r.colours = number<Colour>(f[6], "colours");
        r.abs_bound = number<Colour>(f[7], "abs_bound");
        r.rel_bound = number<Colour>(f[8], "rel_bound");
        if (f[9] != "0" && f[9] != "1")
            throw BenchSpecError("bad verified flag '" + std::string(f[9]) + "'");
        r.verified = f[9] == "1";
        r.runtime_ms = number<double>(f[10], "runtime_ms");
        r.restarts = number<std::size_t>(f[11], "restarts");
        r.seed = number<std::uint64_t>(f[12], "seed");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string bench_table(const std::vector<BenchRow>& rows)
{
    std::vector<std::vector<std::string>> cells{
        {"id", "n", "m", "delta", "mode", "method", "colours", "abs_bound", "rel_bound", "verified", "runtime_ms",
            "restarts", "seed", "note"}};
    char runtime[64];
    for (const auto& r : rows) {
        std::snprintf(runtime, sizeof runtime, "%.3f", r.runtime_ms);
        cells.push_back({r.id, std::to_string(r.n), std::to_string(r.m), std::to_string(r.delta),
            std::string(to_string(r.mode)), std::string(to_string(r.method)), std::to_string(r.colours),
            std::to_string(r.abs_bound), r.rel_bound ? std::to_string(r.rel_bound) : "-", r.verified ? "yes" : "no",
            runtime, std::to_string(r.restarts), std::to_string(r.seed), r.note});
    }
    std::vector<std::size_t> width(cells.front().size(), 0);
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i)
            width[i] = std::max(width[i], line[i].size());
    std::ostringstream out;
    for (const auto& line : cells) {
        std::string text;
        for (std::size_t i = 0; i < line.size(); ++i) {
            text += line[i];
            if (i + 1 < line.size())
                text += std::string(width[i] - line[i].size() + 2, ' ');
        }
        while (!text.empty() && text.back() == ' ')
            text.pop_back();
        out << text << '\n';
    }
    return out.str();
}

} // namespace nsd
