#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <conclust/core.hpp>
#include <conclust/io.hpp>
#include <conclust/random.hpp>
#include <conclust/similarity.hpp>

#include "test_helpers.hpp"

using conclust::Clustering;
using conclust::Label;
using conclust::LabelMatrix;
using conclust::normalize;
using conclust::ParseError;
using conclust::RandomSource;
using conclust::RunReport;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("ingest maps categories in first-appearance order") {
    const LabelMatrix m = conclust::ingest_categorical("a,x\na,y\nb,y\n", {}, false);
    REQUIRE(m.nodes() == 3);
    REQUIRE(m.columns() == 2);
    CHECK(m.column_raw(0) == std::vector<Label>{0, 0, 1});
    CHECK(m.column_raw(1) == std::vector<Label>{0, 1, 1});
}

TEST_CASE("ingest honors header and dropped columns") {
    const std::string csv = "id,color,size\n1,red,s\n2,red,m\n3,blue,m\n";
    const LabelMatrix m = conclust::ingest_categorical(csv, {0}, true);
    REQUIRE(m.nodes() == 3);
    REQUIRE(m.columns() == 2);
    CHECK(m.column_raw(0) == std::vector<Label>{0, 0, 1});
    CHECK(m.column_raw(1) == std::vector<Label>{0, 1, 1});
}

TEST_CASE("ingest treats question mark and empty string as categories") {
    const LabelMatrix m = conclust::ingest_categorical("?,\n?,x\na,\n", {}, false);
    CHECK(m.column_raw(0) == std::vector<Label>{0, 0, 1});  // "?" is category 0
    CHECK(m.column_raw(1) == std::vector<Label>{0, 1, 0});  // "" is category 0
}

TEST_CASE("ingest rejects ragged and degenerate input") {
    CHECK_THROWS_AS(conclust::ingest_categorical("a,b\nc\n", {}, false), ParseError);
    CHECK_THROWS_AS(conclust::ingest_categorical("", {}, false), ParseError);
    CHECK_THROWS_AS(conclust::ingest_categorical("a,b\n", {0, 1}, false), ParseError);
    CHECK_THROWS_AS(conclust::ingest_categorical("a,b\nc,d\n", {5}, false), ParseError);
    CHECK_THROWS_AS(conclust::ingest_categorical("a,b\n", {}, true), ParseError);  // header only
    try {
        conclust::ingest_categorical("a,b\nc,d\ne\n", {}, false);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("ingest of a single row makes singleton clusterings") {
    const LabelMatrix m = conclust::ingest_categorical("a,b,c\n", {}, false);
    CHECK(m.nodes() == 1);
    CHECK(m.columns() == 3);
    CHECK(m.column(0).cluster_count == 1);
}

TEST_CASE("mushrooms-style fixture ingests to 22 clusterings") {
    const std::string csv = slurp(std::string(TEST_DATA_DIR) + "/mushrooms_sample.csv");
    const LabelMatrix m = conclust::ingest_categorical(csv, {0}, false);
    CHECK(m.columns() == 22);
    CHECK(m.nodes() == 30);
    // rows 3, 7, 12, 19, 26 share the "?" category in original column 11
    const auto col = m.column_raw(10);  // kept index 10 = original column 11
    const std::set<std::size_t> q_rows{3, 7, 12, 19, 26};
    for (std::size_t a : q_rows)
        for (std::size_t b : q_rows) CHECK(col[a] == col[b]);
}

TEST_CASE("label matrix text round-trips") {
    RandomSource rng(401);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng.below(12);
        const std::size_t k = 1 + rng.below(6);
        const LabelMatrix m = testing::random_matrix(n, k, 5, rng);
        const LabelMatrix back = conclust::read_label_matrix(conclust::write_label_matrix(m));
        REQUIRE(back.nodes() == m.nodes());
        REQUIRE(back.columns() == m.columns());
        REQUIRE(back.data() == m.data());
    }
}

TEST_CASE("label matrix reader accepts the minimal file") {
    const LabelMatrix m = conclust::read_label_matrix("1 1\n0\n");
    CHECK(m.nodes() == 1);
    CHECK(m.columns() == 1);
    CHECK(m.at(0, 0) == 0);
    const LabelMatrix no_final_newline = conclust::read_label_matrix("1 1\n0");
    CHECK(no_final_newline.at(0, 0) == 0);
}

TEST_CASE("label matrix reader names the offending row") {
    try {
        conclust::read_label_matrix("2 3\n0 1 2\n0 1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(conclust::read_label_matrix("2 2\n0 x\n1 1\n"), ParseError);
    CHECK_THROWS_AS(conclust::read_label_matrix("abc\n"), ParseError);
    CHECK_THROWS_AS(conclust::read_label_matrix("2 2\n0 0\n"), ParseError);
    CHECK_THROWS_AS(conclust::read_label_matrix("0 1\n"), ParseError);
    CHECK_THROWS_AS(conclust::read_label_matrix(""), ParseError);
}

TEST_CASE("edge list parsing validates endpoints") {
    const auto edges = conclust::read_edge_list("0 1\n1 2\n", 3);
    const conclust::GraphAdjacency g(3, edges);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));

    const auto dup = conclust::read_edge_list("0 1\n1 0\n", 2);
    const conclust::GraphAdjacency g2(2, dup);
    CHECK(g2.degree(0) == 1);

    CHECK_THROWS_AS(conclust::read_edge_list("0 0\n", 2), ParseError);
    CHECK_THROWS_AS(conclust::read_edge_list("0 9\n", 3), ParseError);
    CHECK_THROWS_AS(conclust::read_edge_list("0 1 2\n", 3), ParseError);
    CHECK_THROWS_AS(conclust::read_edge_list("0 x\n", 3), ParseError);
}

TEST_CASE("clustering text round-trips") {
    const Clustering c = normalize(std::vector<Label>{0, 0, 1});
    CHECK(conclust::write_clustering(c) == "0\n0\n1\n");
    CHECK(conclust::read_clustering("0\n0\n1\n") == c);
    // non-canonical labels are normalized on read
    CHECK(conclust::read_clustering("7\n7\n4\n") == c);
    CHECK_THROWS_AS(conclust::read_clustering(""), ParseError);
    CHECK_THROWS_AS(conclust::read_clustering("1 2\n"), ParseError);
}

TEST_CASE("run report round-trips through its reader") {
    RunReport r;
    r.algorithm = "pivot";
    r.columns_used = 22;
    r.seed = 7;
    r.runs = 3;
    r.disagreements = {120, 118, 125};
    r.wall_ms = {0.512, 0.498, 0.533};
    r.ratio_to_full = 1.03125;
    const RunReport back = conclust::read_report(conclust::write_report(r));
    CHECK(back == r);

    RunReport no_ratio = r;
    no_ratio.ratio_to_full.reset();
    const std::string text = conclust::write_report(no_ratio);
    CHECK(text.find("ratio_to_full") == std::string::npos);
    CHECK(conclust::read_report(text) == no_ratio);
}

TEST_CASE("run report reader rejects malformed input") {
    CHECK_THROWS_AS(conclust::read_report("algorithm pivot\n"), ParseError);
    CHECK_THROWS_AS(conclust::read_report("bogus 1\n"), ParseError);
    RunReport r;
    r.algorithm = "vote";
    r.columns_used = 2;
    r.seed = 0;
    r.runs = 2;
    r.disagreements = {1, 2};
    r.wall_ms = {0.1};  // length mismatch
    CHECK_THROWS_AS(conclust::read_report(conclust::write_report(r)), ParseError);
}

TEST_CASE("report keys appear in stable order") {
    RunReport r;
    r.algorithm = "pivot";
    r.columns_used = 4;
    r.seed = 1;
    r.runs = 1;
    r.disagreements = {9};
    r.wall_ms = {1.25};
    const std::string text = conclust::write_report(r);
    const auto pos = [&](const char* key) { return text.find(key); };
    CHECK(pos("algorithm") < pos("\nR "));
    CHECK(pos("\nR ") < pos("seed"));
    CHECK(pos("seed") < pos("runs"));
    CHECK(pos("runs") < pos("disagreements"));
    CHECK(pos("disagreements") < pos("wall_ms"));
}
