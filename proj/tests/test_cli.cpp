#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <conclust/cli.hpp>
#include <conclust/core.hpp>
#include <conclust/io.hpp>

#include "test_helpers.hpp"

namespace fs = std::filesystem;
using conclust::LabelMatrix;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("conclust-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = conclust::run_cli(std::move(args), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

} // namespace

TEST_CASE("help exits cleanly and lists the subcommands") {
    const CliResult r = run({"--help"});
    CHECK(r.code == 0);
    for (const char* name : {"consensus", "bound", "gen", "ingest", "eval", "bench"})
        CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("a subcommand is required") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("unknown flags are a usage error") {
    CHECK(run({"bound", "--r-values", "2", "--frob"}).code == 2);
    CHECK(run({"eval", "--input", "x"}).code == 2);  // missing required --clustering
}

TEST_CASE("missing input files exit with the io code") {
    const TempDir dir;
    const CliResult r = run({"eval", "--input", dir.file("absent.txt"), "--clustering",
                             dir.file("absent2.txt")});
    CHECK(r.code == 3);
    CHECK(r.err.find("absent.txt") != std::string::npos);
}

TEST_CASE("malformed input files exit with the validation code") {
    const TempDir dir;
    conclust::write_file(dir.file("bad.txt"), "not a matrix\n");
    conclust::write_file(dir.file("c.txt"), "0\n");
    const CliResult r = run({"eval", "--input", dir.file("bad.txt"), "--clustering",
                             dir.file("c.txt")});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("eval prints the integer disagreement") {
    const TempDir dir;
    conclust::write_file(dir.file("m.txt"), "3 1\n0\n0\n1\n");
    conclust::write_file(dir.file("c.txt"), "0\n1\n1\n");
    const CliResult r = run({"eval", "--input", dir.file("m.txt"), "--clustering",
                             dir.file("c.txt")});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    conclust::write_file(dir.file("short.txt"), "0\n1\n");
    CHECK(run({"eval", "--input", dir.file("m.txt"), "--clustering", dir.file("short.txt")})
              .code == 2);
}

TEST_CASE("gen produces a deterministic binary matrix") {
    const TempDir dir;
    const std::vector<std::string> args{"gen",    "--rows", "50",  "--cols", "6",
                                        "--mean", "0.5",    "--corr", "0.3", "--seed",
                                        "9",      "--out",  dir.file("a.txt")};
    REQUIRE(run(args).code == 0);
    const LabelMatrix m = conclust::read_label_matrix(conclust::read_file(dir.file("a.txt")));
    CHECK(m.nodes() == 50);
    CHECK(m.columns() == 6);

    auto again = args;
    again.back() = dir.file("b.txt");
    REQUIRE(run(again).code == 0);
    CHECK(conclust::read_file(dir.file("a.txt")) == conclust::read_file(dir.file("b.txt")));

    CHECK(run({"gen", "--rows", "0", "--cols", "3", "--out", dir.file("z.txt")}).code == 2);
    CHECK(run({"gen", "--rows", "5", "--cols", "3", "--mean", "1.5", "--out",
               dir.file("z.txt")}).code == 2);
}

TEST_CASE("gen over a complete graph collapses every run to one cluster") {
    const TempDir dir;
    conclust::write_file(dir.file("g.txt"), "0 1\n0 2\n1 2\n");
    const CliResult r = run({"gen", "--graph", dir.file("g.txt"), "--n", "3", "--runs", "4",
                             "--out", dir.file("m.txt")});
    REQUIRE(r.code == 0);
    CHECK(conclust::read_file(dir.file("m.txt")) == "3 4\n0 0 0 0\n0 0 0 0\n0 0 0 0\n");
}

TEST_CASE("ingest converts a csv and respects drops and headers") {
    const TempDir dir;
    conclust::write_file(dir.file("d.csv"), "id,color\n1,red\n2,red\n3,blue\n");
    const CliResult r = run({"ingest", "--input", dir.file("d.csv"), "--drop-cols", "0",
                             "--header", "--out", dir.file("m.txt")});
    REQUIRE(r.code == 0);
    CHECK(conclust::read_file(dir.file("m.txt")) == "3 1\n0\n0\n1\n");

    conclust::write_file(dir.file("ragged.csv"), "a,b\nc\n");
    CHECK(run({"ingest", "--input", dir.file("ragged.csv"), "--out", dir.file("m2.txt")})
              .code == 2);
}

TEST_CASE("bound writes the penalty table to stdout or a file") {
    const CliResult r = run({"bound", "--r-values", "2,10"});
    REQUIRE(r.code == 0);
    const auto lines = conclust::detail::split_lines(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "R,g,bound");
    CHECK(std::string(lines[1]).substr(0, 6) == "2,1.43");
    CHECK(std::string(lines[2]).substr(0, 7) == "10,1.13");

    const TempDir dir;
    REQUIRE(run({"bound", "--r-values", "2,10", "--out", dir.file("b.csv")}).code == 0);
    CHECK(conclust::read_file(dir.file("b.csv")) == r.out);
}

TEST_CASE("consensus writes reports plus a summary and echoes the csv") {
    const TempDir dir;
    conclust::RandomSource rng(77);
    const LabelMatrix m = testing::random_matrix(12, 4, 3, rng);
    conclust::write_file(dir.file("m.txt"), conclust::write_label_matrix(m));
    const std::string out_dir = dir.file("results");

    const CliResult r = run({"consensus", "--input", dir.file("m.txt"), "--r-values", "2",
                             "--runs", "3", "--seed", "1", "--out", out_dir});
    REQUIRE(r.code == 0);
    const std::string csv = conclust::read_file(out_dir + "/summary.csv");
    CHECK(r.out == csv);
    const auto lines = conclust::detail::split_lines(csv);
    REQUIRE(lines.size() == 3);  // header + R=2 + R=4
    CHECK(lines[0] == "R,mean,std,mean_ms,ratio_to_full");
    CHECK(std::string(lines[1]).substr(0, 2) == "2,");
    CHECK(std::string(lines[2]).substr(0, 2) == "4,");

    for (const char* name : {"report_R2.txt", "report_R4.txt"}) {
        const auto report = conclust::read_report(conclust::read_file(out_dir + "/" + name));
        CHECK(report.runs == 3);
        CHECK(report.disagreements.size() == 3);
        CHECK(report.ratio_to_full.has_value());
    }
}

TEST_CASE("consensus validates algorithm, clamp rule, and budgets") {
    const TempDir dir;
    conclust::write_file(dir.file("m.txt"), "2 2\n0 0\n1 1\n");
    CHECK(run({"consensus", "--input", dir.file("m.txt"), "--algo", "magic", "--out",
               dir.file("o")}).code == 2);
    CHECK(run({"consensus", "--input", dir.file("m.txt"), "--clamp-rule", "trim", "--out",
               dir.file("o")}).code == 2);
    CHECK(run({"consensus", "--input", dir.file("m.txt"), "--r-values", "9", "--out",
               dir.file("o")}).code == 2);
}

TEST_CASE("bench reports matching results on both paths") {
    const TempDir dir;
    conclust::RandomSource rng(31);
    const LabelMatrix m = testing::random_matrix(30, 4, 3, rng);
    conclust::write_file(dir.file("m.txt"), conclust::write_label_matrix(m));

    const CliResult r = run({"bench", "--input", dir.file("m.txt"), "--runs", "2", "--seed",
                             "3", "--out", dir.file("bench.txt")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("n 30\n") != std::string::npos);
    CHECK(r.out.find("k 4\n") != std::string::npos);
    CHECK(r.out.find("results_match 1\n") != std::string::npos);
    CHECK(conclust::read_file(dir.file("bench.txt")) == r.out);
}

TEST_CASE("bench refuses a precompute above the cap unless overridden") {
    const TempDir dir;
    conclust::RandomSource rng(32);
    const LabelMatrix m = testing::random_matrix(40, 3, 2, rng);
    conclust::write_file(dir.file("m.txt"), conclust::write_label_matrix(m));

    const CliResult refused = run({"bench", "--input", dir.file("m.txt"), "--runs", "1",
                                   "--precompute-cap-mb", "0"});
    CHECK(refused.code == 2);
    CHECK(refused.err.find("--allow-quadratic") != std::string::npos);

    const CliResult allowed = run({"bench", "--input", dir.file("m.txt"), "--runs", "1",
                                   "--precompute-cap-mb", "0", "--allow-quadratic"});
    CHECK(allowed.code == 0);
}
