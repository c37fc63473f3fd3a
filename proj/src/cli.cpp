#include "nsd/exact_solver.hpp"
#include "nsd/pipeline.hpp"
#include "nsd/workbench.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace nsd {

namespace {

    enum Exit : int { ok = 0, verification_failed = 1, inapplicable = 2, stage_failed = 3, usage = 4 };

    // Malformed input files and bad option values are usage errors.
    class UsageError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    std::string slurp(const std::string& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw UsageError("cannot read '" + path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    void write_file(const std::string& path, const std::string& text)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << text))
            throw UsageError("cannot write '" + path + "'");
    }

    std::optional<GraphFormat> format_flag(const std::string& text)
    {
        if (text == "auto")
            return std::nullopt;
        if (text == "graph6")
            return GraphFormat::graph6;
        if (text == "edges")
            return GraphFormat::edge_list;
        throw UsageError("unknown graph format '" + text + "'");
    }

    Graph load_graph(const std::string& path, const std::string& format)
    {
        try {
            return read_graph_file(path, format_flag(format));
        } catch (const GraphError& err) {
            throw UsageError(err.what());
        }
    }

    Mode mode_flag(const std::string& text)
    {
        try {
            return parse_mode(text);
        } catch (const ColouringError& err) {
            throw UsageError(err.what());
        }
    }

    // Colouring text goes to --out when given, otherwise to stdout ahead of
    // the summary line.
    void emit(const Graph& g, const TotalColouring& c, const std::string& out_path)
    {
        auto text = write_colouring(g, c);
        if (out_path.empty())
            std::cout << text;
        else
            write_file(out_path, text);
    }

    struct SolveArgs {
        std::string graph, format = "auto", mode = "edge", out;
        std::uint64_t node_limit = SolveOptions{}.node_limit;
    };

    int cmd_solve(const SolveArgs& a)
    {
        auto g = load_graph(a.graph, a.format);
        auto mode = mode_flag(a.mode);
        auto result = chi_sigma(g, mode, SolveOptions{a.node_limit});
        if (!verify_nsd(g, result.witness).pass)
            throw std::logic_error("solver witness failed verification");
        emit(g, result.witness, a.out);
        std::cout << "chi=" << result.k << " nodes=" << result.nodes << '\n';
        return ok;
    }

    struct PipelineArgs {
        std::string graph, format = "auto", mode = "edge", profile = "desk", fallback = "none", out, trace;
        std::uint64_t seed = 1;
        std::optional<int> min_delta;
    };

    int cmd_run_pipeline(const PipelineArgs& a)
    {
        auto g = load_graph(a.graph, a.format);
        auto mode = mode_flag(a.mode);
        if (a.fallback != "none" && a.fallback != "exact" && a.fallback != "greedy")
            throw UsageError("--fallback must be none, exact or greedy");
        Profile profile;
        try {
            profile = load_profile(a.profile);
            if (a.min_delta)
                profile.min_delta = *a.min_delta;
            profile.validate();
        } catch (const std::invalid_argument& err) {
            throw UsageError(err.what());
        }

        try {
            auto result = run(g, mode, profile, a.seed);
            emit(g, result.colouring, a.out);
            if (!a.trace.empty())
                write_file(a.trace, result.trace.serialize());
            std::cout << "method=pipeline profile=" << profile.name << ' ' << result.report.summary()
                      << " relative_bound=" << result.trace.relative_bound()
                      << " absolute_bound=" << absolute_bound(result.trace.delta)
                      << " restarts=" << result.trace.total_restarts() << '\n';
            return ok;
        } catch (const DeltaTooSmall& err) {
            if (a.fallback == "none")
                throw;
            std::cerr << "nsd: " << err.what() << "; falling back to " << a.fallback << '\n';
        }

        TotalColouring colouring;
        if (a.fallback == "exact")
            colouring = chi_sigma(g, mode).witness;
        else
            colouring = greedy_repair(g, mode).colouring;
        auto report = verify_nsd(g, colouring);
        if (!report.pass) {
            std::cerr << "nsd: fallback colouring failed verification: " << report.summary() << '\n';
            return verification_failed;
        }
        emit(g, colouring, a.out);
        if (!a.trace.empty())
            write_file(a.trace, "stage=fallback method=" + a.fallback + " palette=" + std::to_string(report.max_colour) + "\n");
        std::cout << "method=" << a.fallback << "-fallback " << report.summary() << '\n';
        return ok;
    }

    struct VerifyArgs {
        std::string graph, colouring, format = "auto";
    };

    int cmd_verify(const VerifyArgs& a)
    {
        auto g = load_graph(a.graph, a.format);
        TotalColouring c;
        try {
            c = read_colouring(g, slurp(a.colouring));
        } catch (const ColouringError& err) {
            throw UsageError(err.what());
        }
        auto report = verify_nsd(g, c);
        std::cout << report.summary() << '\n';
        const std::size_t shown = 20;
        for (std::size_t i = 0; i < report.conflicts.size() && i < shown; ++i) {
            const auto& k = report.conflicts[i];
            std::cerr << "conflict " << k.u << '-' << k.v << " sum=" << k.sum << '\n';
        }
        for (std::size_t i = 0; i < report.violations.size() && i < shown; ++i) {
            const auto& v = report.violations[i];
            std::cerr << "violation kind=" << static_cast<int>(v.kind) << ' ' << v.first << ' ' << v.second << '\n';
        }
        return report.pass ? ok : verification_failed;
    }

    struct GenerateArgs {
        std::string family, format = "graph6", out;
        GenerateParams params;
        std::uint64_t seed = 1;
    };

    int cmd_generate(const GenerateArgs& a)
    {
        Graph g;
        try {
            g = generate(parse_family(a.family), a.params, a.seed);
        } catch (const GeneratorError& err) {
            throw UsageError(err.what());
        }
        auto format = format_flag(a.format);
        auto text = format == GraphFormat::edge_list ? to_edge_list(g) : to_graph6(g) + "\n";
        if (a.out.empty())
            std::cout << text;
        else
            write_file(a.out, text);
        return ok;
    }

    struct BenchArgs {
        std::string spec, csv;
        int jobs = 1;
    };

    int cmd_bench(const BenchArgs& a)
    {
        std::vector<BenchCase> cases;
        try {
            cases = parse_bench_spec(slurp(a.spec));
        } catch (const BenchSpecError& err) {
            throw UsageError(err.what());
        }
        auto rows = run_bench(cases, a.jobs);
        std::cout << bench_table(rows);
        if (a.csv == "-")
            std::cout << bench_csv(rows);
        else if (!a.csv.empty())
            write_file(a.csv, bench_csv(rows));
        return ok;
    }

} // namespace

int run_cli(int argc, char** argv)
{
    CLI::App app{"Neighbour sum distinguishing colourings: exact solver, constructive pipeline, bench."};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "exact chi for a small graph");
    s->add_option("graph", solve.graph, "graph file (.g6 or edge list)")->required();
    s->add_option("--format", solve.format, "auto, graph6 or edges");
    s->add_option("--mode", solve.mode, "edge or total");
    s->add_option("--node-limit", solve.node_limit, "search node budget");
    s->add_option("--out", solve.out, "write the witness colouring here");

    PipelineArgs pipe;
    auto* p = app.add_subcommand("run-pipeline", "constructive colouring for large maximum degree");
    p->add_option("graph", pipe.graph, "graph file")->required();
    p->add_option("--format", pipe.format, "auto, graph6 or edges");
    p->add_option("--mode", pipe.mode, "edge or total");
    p->add_option("--seed", pipe.seed, "random seed");
    p->add_option("--profile", pipe.profile, "paper, desk or a key=value file");
    p->add_option("--min-delta", pipe.min_delta, "override the profile's minimum maximum degree");
    p->add_option("--fallback", pipe.fallback, "none, exact or greedy when the degree is too small");
    p->add_option("--out", pipe.out, "write the colouring here");
    p->add_option("--trace", pipe.trace, "write the stage trace here");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "check a colouring against a graph");
    v->add_option("graph", ver.graph, "graph file")->required();
    v->add_option("colouring", ver.colouring, "colouring file")->required();
    v->add_option("--format", ver.format, "auto, graph6 or edges");

    GenerateArgs gen;
    auto* gcmd = app.add_subcommand("generate", "write a generated graph");
    gcmd->add_option("family", gen.family, "complete, cycle, path, star, gnp or random-regular")->required();
    gcmd->add_option("-n", gen.params.n, "vertices (leaves for star)");
    gcmd->add_option("-d", gen.params.d, "degree for random-regular");
    gcmd->add_option("-p", gen.params.p, "edge probability for gnp");
    gcmd->add_option("--attempts", gen.params.max_attempts, "random-regular restart cap");
    gcmd->add_option("--seed", gen.seed, "random seed");
    gcmd->add_option("--format", gen.format, "graph6 or edges");
    gcmd->add_option("--out", gen.out, "output path");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "run a benchmark spec");
    b->add_option("spec", bench.spec, "spec file")->required();
    b->add_option("--jobs", bench.jobs, "worker threads")->check(CLI::PositiveNumber);
    b->add_option("--csv", bench.csv, "write CSV here ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*s)
            return cmd_solve(solve);
        if (*p)
            return cmd_run_pipeline(pipe);
        if (*v)
            return cmd_verify(ver);
        if (*gcmd)
            return cmd_generate(gen);
        if (*b)
            return cmd_bench(bench);
    } catch (const UsageError& err) {
        std::cerr << "nsd: " << err.what() << '\n';
        return usage;
    } catch (const IsolatedEdgeError& err) {
        std::cerr << "nsd: inapplicable: " << err.what() << '\n';
        return inapplicable;
    } catch (const DeltaTooSmall& err) {
        std::cerr << "nsd: inapplicable: " << err.what() << '\n';
        return inapplicable;
    } catch (const StageFailure& err) {
        std::cerr << "nsd: stage failure: " << err.what() << '\n';
        return err.stage == "verify" ? verification_failed : stage_failed;
    } catch (const InfeasibleProfile& err) {
        std::cerr << "nsd: stage failure: " << err.what() << '\n';
        return stage_failed;
    } catch (const RestartLimitError& err) {
        std::cerr << "nsd: stage failure: " << err.what() << '\n';
        return stage_failed;
    } catch (const SearchLimitExceeded& err) {
        std::cerr << "nsd: stage failure: " << err.what() << '\n';
        return stage_failed;
    } catch (const GreedyRepairFailed& err) {
        std::cerr << "nsd: stage failure: " << err.what() << '\n';
        return stage_failed;
    } catch (const std::exception& err) {
        std::cerr << "nsd: internal error: " << err.what() << '\n';
        return stage_failed;
    }
    return usage;
}

} // namespace nsd
