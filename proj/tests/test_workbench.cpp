#include "nsd/workbench.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace nsd;

namespace {

std::string read_all(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_all(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p);
    out << text;
}

struct CliResult {
    int code;
    std::string out;
};

// Runs the nsd binary named by NSD_CLI, capturing stdout.
CliResult cli(const std::string& args)
{
    const char* bin = std::getenv("NSD_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "NSD_CLI is not set");
    auto out = std::filesystem::temp_directory_path() / "nsd_cli_stdout.txt";
    std::string cmd = std::string(bin) + " " + args + " > " + out.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_all(out)};
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "nsd_workbench_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("deterministic generators")
{
    auto c5 = generate(Family::cycle, {5}, 0);
    CHECK(c5.vertex_count() == 5);
    CHECK(c5.edge_count() == 5);
    CHECK(is_c5(c5));
    CHECK_FALSE(is_c5(path_graph(5)));

    auto k4 = generate(Family::complete, {4}, 0);
    CHECK(k4.edge_count() == 6);
    CHECK(max_degree(k4) == 3);

    CHECK(star_graph(4).vertex_count() == 5);
    CHECK(path_graph(1).edge_count() == 0);
}

TEST_CASE("random generators are reproducible")
{
    GenerateParams rr;
    rr.n = 10;
    rr.d = 3;
    auto a = generate(Family::random_regular, rr, 42);
    auto b = generate(Family::random_regular, rr, 42);
    CHECK(a == b);
    for (Vertex v = 0; v < 10; ++v)
        CHECK(a.degree(v) == 3);

    GenerateParams gp;
    gp.n = 30;
    gp.p = 0.3;
    CHECK(generate(Family::gnp, gp, 9) == generate(Family::gnp, gp, 9));
    CHECK_FALSE(generate(Family::gnp, gp, 9) == generate(Family::gnp, gp, 10));

    auto big = random_regular_graph(2000, 256, 1);
    for (Vertex v = 0; v < big.vertex_count(); ++v)
        REQUIRE(big.degree(v) == 256);
}

TEST_CASE("generator parameter checks")
{
    CHECK_THROWS_AS((void)random_regular_graph(5, 3, 1), GeneratorError);
    CHECK_THROWS_AS((void)random_regular_graph(4, 4, 1), GeneratorError);
    CHECK_THROWS_AS((void)gnp_graph(5, 1.5, 1), GeneratorError);
    CHECK_THROWS_AS((void)cycle_graph(2), GeneratorError);
    CHECK_THROWS_AS((void)parse_family("petersen"), GeneratorError);
    CHECK(parse_family("random-regular") == Family::random_regular);
}

TEST_CASE("connected graph enumeration")
{
    // numbers of connected unlabelled graphs on 1..6 vertices
    const int expected[] = {1, 1, 2, 6, 21, 112};
    for (int n = 1; n <= 6; ++n) {
        auto all = connected_graphs(n);
        CHECK(all.size() == static_cast<std::size_t>(expected[n - 1]));
        for (const auto& g : all)
            CHECK(components(SubgraphRef::whole(g)).size() == (g.edge_count() ? 1U : 0U));
    }
    CHECK_THROWS_AS((void)connected_graphs(7), GeneratorError);
}

TEST_CASE("greedy repair")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = gnp_graph(25, 0.3, seed);
        auto t = greedy_repair(g, Mode::total);
        CHECK(verify_nsd(g, t.colouring).pass);
        CHECK(oracle::naive_proper(g, t.colouring));
        if (isolated_edges(SubgraphRef::whole(g)).empty()) {
            auto e = greedy_repair(g, Mode::edge);
            CHECK(verify_nsd(g, e.colouring).pass);
        }
    }
    CHECK_THROWS_AS((void)greedy_repair(complete_graph(2), Mode::edge), IsolatedEdgeError);
}

TEST_CASE("bench spec parsing")
{
    auto cases = parse_bench_spec("# comment\n\nid=c5 family=cycle n=5 mode=edge,total method=exact seed=1,2\n"
                                  "family=complete n=3\n");
    REQUIRE(cases.size() == 5);
    CHECK(cases[0].id == "c5");
    CHECK(cases[0].mode == Mode::edge);
    CHECK(cases[1].seed == 2);
    CHECK(cases[2].mode == Mode::total);
    CHECK(cases[4].id == "complete-3");

    CHECK(parse_bench_spec("").empty());
    CHECK_THROWS_AS((void)parse_bench_spec("family=cycle file=x.g6"), BenchSpecError);
    CHECK_THROWS_AS((void)parse_bench_spec("n=5"), BenchSpecError);
    CHECK_THROWS_AS((void)parse_bench_spec("family=cycle n=5 colour=red"), BenchSpecError);
    CHECK_THROWS_AS((void)parse_bench_spec("id=a,b family=cycle n=5"), BenchSpecError);
    CHECK_THROWS_AS((void)parse_bench_spec("family=cycle n=five"), BenchSpecError);
}

TEST_CASE("bench rows")
{
    auto cases = parse_bench_spec("id=k3 family=complete n=3 method=exact\n"
                                  "id=c5 family=cycle n=5 method=exact\n"
                                  "id=k2 family=complete n=2 method=exact\n"
                                  "id=tiny family=cycle n=6 method=pipeline\n"
                                  "id=greedy family=gnp n=20 p=0.3 method=greedy-fallback mode=total seed=3\n");
    auto rows = run_bench(cases, 1);
    REQUIRE(rows.size() == 5);

    CHECK(rows[0].colours == 3);
    CHECK(rows[0].verified);
    CHECK(rows[0].note.empty());

    CHECK(rows[1].colours == 5);
    CHECK(rows[1].verified);
    CHECK(rows[1].colours > rows[1].delta + 2);
    CHECK(rows[1].note.find("C5") != std::string::npos);

    // failures stay in their row
    CHECK_FALSE(rows[2].verified);
    CHECK(rows[2].colours == 0);
    CHECK(rows[2].note.find("isolated") != std::string::npos);
    CHECK_FALSE(rows[3].verified);
    CHECK(rows[3].note.find("below the profile minimum") != std::string::npos);

    CHECK(rows[4].verified);
    CHECK(rows[4].abs_bound == rows[4].delta + static_cast<Colour>(std::floor(95 * std::sqrt(rows[4].delta))));

    auto parallel = run_bench(cases, 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parallel[i].id == rows[i].id);
        CHECK(parallel[i].colours == rows[i].colours);
        CHECK(parallel[i].verified == rows[i].verified);
    }

    auto table = bench_table(rows);
    CHECK(table.find("C5") != std::string::npos);
    CHECK(bench_table({}).find("id") == 0);
}

TEST_CASE("bench CSV round trip")
{
    auto cases = parse_bench_spec("id=k3 family=complete n=3 mode=edge,total\n"
                                  "id=rr family=random-regular n=300 d=64 method=pipeline seed=5\n");
    auto rows = run_bench(cases, 2);
    auto csv = bench_csv(rows);
    CHECK(csv.rfind(std::string(bench_csv_header) + "\n", 0) == 0);
    auto back = parse_bench_csv(csv);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(back[i].same_csv_fields(rows[i]));
    CHECK(bench_csv(back) == csv);
    CHECK(rows[2].verified);
    CHECK(rows[2].rel_bound >= rows[2].colours);

    CHECK(parse_bench_csv(std::string(bench_csv_header) + "\n").empty());
    CHECK_THROWS_AS((void)parse_bench_csv("id,n\n"), BenchSpecError);
    CHECK_THROWS_AS((void)parse_bench_csv(std::string(bench_csv_header) + "\nx,1,2\n"), BenchSpecError);
}

TEST_CASE("command line: solve and verify")
{
    auto p3 = scratch("p3.txt");
    write_all(p3, "0 1\n1 2\n");
    auto r = cli("solve " + p3.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("chi=2") != std::string::npos);

    auto c5 = scratch("c5.g6");
    write_all(c5, to_graph6(cycle_graph(5)) + "\n");
    auto witness = scratch("c5.col");
    auto s = cli("solve " + c5.string() + " --out " + witness.string());
    CHECK(s.code == 0);
    CHECK(s.out.find("chi=5") != std::string::npos);
    CHECK(cli("verify " + c5.string() + " " + witness.string()).code == 0);

    auto bad = scratch("c5_bad.col");
    write_all(bad, "nsd edge n=5 m=5 maxcolour=2\ne 0 1 1\ne 1 2 2\ne 2 3 1\ne 3 4 2\ne 0 4 2\n");
    CHECK(cli("verify " + c5.string() + " " + bad.string()).code == 1);

    CHECK(cli("verify " + c5.string() + " " + scratch("missing.col").string()).code == 4);
}

TEST_CASE("command line: pipeline exit codes")
{
    auto k2 = scratch("k2.g6");
    write_all(k2, "A_\n");
    CHECK(cli("run-pipeline " + k2.string()).code == 2);

    auto c6 = scratch("c6.txt");
    write_all(c6, to_edge_list(cycle_graph(6)));
    CHECK(cli("run-pipeline " + c6.string()).code == 2);
    CHECK(cli("run-pipeline " + c6.string() + " --fallback exact").code == 0);
    CHECK(cli("run-pipeline " + c6.string() + " --fallback greedy --mode total").code == 0);

    auto rr = scratch("rr.g6");
    CHECK(cli("generate random-regular -n 1000 -d 256 --seed 2 --out " + rr.string()).code == 0);
    CHECK(cli("run-pipeline " + rr.string() + " --profile paper").code == 3);

    auto out = scratch("rr.col");
    auto trace = scratch("rr.trace");
    auto ok = cli("run-pipeline " + rr.string() + " --profile desk --seed 3 --out " + out.string() + " --trace "
        + trace.string());
    CHECK(ok.code == 0);
    CHECK(cli("verify " + rr.string() + " " + out.string()).code == 0);
    CHECK(read_all(trace).find("stage=distinguish_large") != std::string::npos);

    auto profile = scratch("profile.txt");
    write_all(profile, "base=desk\nmin_delta=2\n");
    CHECK(cli("run-pipeline " + c6.string() + " --profile " + profile.string()).code != 4);
    CHECK(cli("run-pipeline " + c6.string() + " --profile nonsense.txt").code == 4);
}

TEST_CASE("command line: usage and bench")
{
    CHECK(cli("").code == 4);
    CHECK(cli("frobnicate").code == 4);
    CHECK(cli("solve").code == 4);
    CHECK(cli("--help").code == 0);

    auto g = cli("generate complete -n 4 --format edges");
    CHECK(g.code == 0);
    CHECK(parse_edge_list(g.out) == complete_graph(4));

    auto spec = scratch("spec.txt");
    write_all(spec, "id=k3 family=complete n=3 method=exact\n");
    auto csv = scratch("bench.csv");
    auto b = cli("bench " + spec.string() + " --jobs 2 --csv " + csv.string());
    CHECK(b.code == 0);
    CHECK(b.out.find("k3") != std::string::npos);
    auto rows = parse_bench_csv(read_all(csv));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].colours == 3);

    auto empty = scratch("empty.txt");
    write_all(empty, "");
    auto e = cli("bench " + empty.string());
    CHECK(e.code == 0);
    CHECK(e.out.find("id") == 0);
}
