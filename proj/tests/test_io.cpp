#include <gtest/gtest.h>

#include <qcluster/io.hpp>

#include "support.hpp"

using namespace qcluster;
namespace qt = qcluster::testing;
using nlohmann::json;

TEST(Json, QLaurentRoundTrip) {
    const QLaurent f = QLaurent::monomial(-1, 3) + QLaurent(BigInt("-100000000000000000000"));
    const json j = io::to_json(f);
    EXPECT_EQ(j.dump(), R"({"-1":"3","0":"-100000000000000000000"})");
    EXPECT_EQ(io::qlaurent_from_json(j), f);
}

TEST(Json, TorusAndCommRoundTrip) {
    const QuantumSeed s = mutate(qt::quantum_a2(), 0);
    const json j = io::to_json(s.vars[0]);
    EXPECT_EQ(j.dump(), R"([{"coeff":{"0":"1"},"exp":[-1,0]},{"coeff":{"0":"1"},"exp":[-1,1]}])");
    EXPECT_EQ(io::torus_from_json(s.frame(), j), s.vars[0]);
    const CommLaurent c = specialize_q1(s.vars[0]);
    EXPECT_EQ(io::comm_from_json(2, io::to_json(c)), c);
}

TEST(Json, SeedLayoutIsOneBased) {
    const json j = io::to_json(qt::quantum_m2n1());
    EXPECT_EQ(j.at("ex"), json({1}));
    EXPECT_EQ(j.at("m"), 2);
    EXPECT_EQ(j.at("B"), json::parse("[[0],[1]]"));
    EXPECT_EQ(j.at("Lambda"), json::parse("[[0,-1],[1,0]]"));
    EXPECT_EQ(j.at("d"), json({1}));
    EXPECT_EQ(j.at("vars").size(), 2u);
}

TEST(SeedFile, DefaultsAndForms) {
    auto f = io::parse_seed_file(json::parse(R"({"B": [[0, 1], [-1, 0]]})"));
    EXPECT_EQ(f.m, 2u);
    EXPECT_EQ(f.ex, (std::vector<std::size_t>{0, 1}));
    EXPECT_FALSE(f.quantum());

    f = io::parse_seed_file(json::parse(R"({"n": 1, "B": [[0], [1]], "Lambda0": [[0]], "D": [[2]]})"));
    EXPECT_TRUE(f.quantum());
    EXPECT_EQ(*f.d, (std::vector<std::int64_t>{2}));
    EXPECT_EQ(*io::lambda_of(f), SkewMatrix({{0, -2}, {2, 0}}));

    f = io::parse_seed_file(json::parse(R"({"m": 3, "ex": [2], "B": [[1], [0], [-1]]})"));
    EXPECT_EQ(f.ex, (std::vector<std::size_t>{1}));
    EXPECT_EQ(io::exchange_matrix(f).at(2, 1), -1);
}

TEST(SeedFile, Errors) {
    EXPECT_THROW(io::parse_seed_file(json::parse("[]")), input_error);
    EXPECT_THROW(io::parse_seed_file(json::parse(R"({"m": 2})")), input_error);
    EXPECT_THROW(io::parse_seed_file(json::parse(R"({"B": [[0, "x"], [0, 0]]})")), input_error);
    EXPECT_THROW(io::parse_seed_file(json::parse(R"({"m": 2, "ex": [3], "B": [[0], [1]]})")), input_error);
    EXPECT_THROW(io::parse_seed_file(json::parse(R"({"m": 3, "B": [[0], [1]]})")), input_error);
    EXPECT_THROW(io::parse_seed_file(json::parse(R"({"n": 2, "ex": [1], "B": [[0], [1]]})")), input_error);
    EXPECT_THROW(io::parse_seed_file(json::parse(R"({"B": [[0]], "D": [[1, 1], [0, 1]]})")), input_error);
    const auto f = io::parse_seed_file(json::parse(R"({"m": 3, "n": 1, "B": [[0], [1], [0]], "Lambda0": [[0]]})"));
    EXPECT_THROW(io::lambda_of(f), input_error);
}

TEST(Dot, ListsNodesAndEdges) {
    const auto g = explore(make_classical_seed(qt::a1()));
    const std::string dot = io::to_dot(g);
    EXPECT_NE(dot.find("digraph exchange_graph {"), std::string::npos);
    EXPECT_NE(dot.find("n0 -> n1 [label=\"1\"];"), std::string::npos);
    EXPECT_NE(dot.find("n1 -> n0 [label=\"1\"];"), std::string::npos);
    EXPECT_NE(dot.find("// status: Closed"), std::string::npos);
}

TEST(GraphJson, SummaryAndFull) {
    const auto g = explore(make_classical_seed(qt::a2()));
    const json s = io::graph_summary(g);
    EXPECT_EQ(s.at("status"), "Closed");
    EXPECT_EQ(s.at("nodes"), 5);
    EXPECT_EQ(s.at("edges"), 10);
    EXPECT_EQ(s.at("cluster_variables"), 5);
    const json full = io::to_json(g);
    EXPECT_EQ(full.at("node_list").size(), 5u);
    EXPECT_EQ(full.at("edge_list").size(), 10u);
    EXPECT_FALSE(full.at("node_list")[0].contains("parent"));
    EXPECT_TRUE(full.at("node_list")[1].contains("parent_direction"));
}
