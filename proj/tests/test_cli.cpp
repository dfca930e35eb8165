#include <gtest/gtest.h>

#include "cli.hpp"

#include <sstream>

using nlohmann::json;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qcluster");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = qcluster::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(QCLUSTER_TEST_DATA) + "/" + name; }

} // namespace

TEST(Cli, CheckQuantumSeed) {
    const auto r = run_cli({"check", data("m2n1.json")});
    ASSERT_EQ(r.status, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("d"), json({1}));
    EXPECT_TRUE(j.at("ok").get<bool>());
    EXPECT_TRUE(j.at("verification").at("passed").get<bool>());
}

TEST(Cli, CheckClassicalSeed) {
    const auto r = run_cli({"check", data("a2_classical.json")});
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(json::parse(r.out).at("d_minimal"), json({1, 1}));
    const auto t = run_cli({"check", data("a2_quantum.json"), "--format", "text"});
    EXPECT_EQ(t.status, 0);
    EXPECT_NE(t.out.find("quasi-commutation: pass"), std::string::npos);
}

TEST(Cli, ZeroLambdaIsIncompatible) {
    const auto r = run_cli({"check", data("zero_lambda.json")});
    EXPECT_EQ(r.status, 1);
    const json e = json::parse(r.err);
    EXPECT_EQ(e.at("error"), "Incompatible");
    EXPECT_EQ(e.at("at"), json({1, 1}));
}

TEST(Cli, NotSymmetrizable) {
    const auto r = run_cli({"check", data("not_symmetrizable.json")});
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(json::parse(r.err).at("error"), "NotSymmetrizable");
}

TEST(Cli, PentagonWalk) {
    const auto r = run_cli({"mutate", data("a2_classical.json"), "--at", "1,2,1,2,1"});
    ASSERT_EQ(r.status, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j.at("equivalent_to_initial").get<bool>());
    EXPECT_TRUE(j.at("report").at("all_laurent").get<bool>());
    EXPECT_EQ(j.at("report").at("rows").size(), 7u);
    const auto q = run_cli({"mutate", data("a2_quantum.json"), "--at", "1,2,1,2,1"});
    ASSERT_EQ(q.status, 0);
    EXPECT_TRUE(json::parse(q.out).at("equivalent_to_initial").get<bool>());
}

TEST(Cli, OutputIsByteStable) {
    const auto a = run_cli({"mutate", data("a3_principal.json"), "--at", "1,2,3,1"});
    const auto b = run_cli({"mutate", data("a3_principal.json"), "--at", "1,2,3,1"});
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    const auto e1 = run_cli({"explore", data("a3_principal.json"), "--full", "--threads", "1"});
    const auto e2 = run_cli({"explore", data("a3_principal.json"), "--full", "--threads", "3"});
    EXPECT_EQ(e1.out, e2.out);
}

TEST(Cli, Explore) {
    auto r = run_cli({"explore", data("a2_quantum.json")});
    ASSERT_EQ(r.status, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j.at("nodes"), 5);
    EXPECT_EQ(j.at("status"), "Closed");
    r = run_cli({"explore", data("kronecker.json"), "--max-seeds", "200", "--max-depth", "1000", "--fingerprint"});
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(json::parse(r.out).at("status"), "CappedBySeeds");
    r = run_cli({"explore", data("kronecker.json"), "--max-depth", "3"});
    EXPECT_EQ(json::parse(r.out).at("status"), "CappedByDepth");
    r = run_cli({"explore", data("a2_classical.json"), "--format", "dot"});
    EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
}

TEST(Cli, Specialize) {
    const auto r = run_cli({"specialize", data("a2_quantum.json"), "--at", "1"});
    ASSERT_EQ(r.status, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("vars")[0], json::parse(R"([{"coeff":"1","exp":[-1,0]},{"coeff":"1","exp":[-1,1]}])"));
    EXPECT_EQ(run_cli({"specialize", data("a2_classical.json")}).status, 2);
}

TEST(Cli, PrincipalLambda) {
    const auto r = run_cli({"principal-lambda", data("b2_principal.json")});
    ASSERT_EQ(r.status, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("m"), 4);
    EXPECT_EQ(j.at("d"), json({2, 1}));
    EXPECT_EQ(j.at("Lambda").size(), 4u);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).status, 2);
    EXPECT_EQ(run_cli({"frobnicate", data("m2n1.json")}).status, 2);
    EXPECT_EQ(run_cli({"check", data("missing.json")}).status, 2);
    EXPECT_EQ(run_cli({"mutate", data("m2n1.json")}).status, 2);
    EXPECT_EQ(run_cli({"mutate", data("m2n1.json"), "--at", "2"}).status, 2);
    EXPECT_EQ(run_cli({"mutate", data("m2n1.json"), "--at", "7"}).status, 2);
    EXPECT_EQ(run_cli({"check", data("m2n1.json"), "--format", "dot"}).status, 2);
    const auto r = run_cli({"mutate", data("m2n1.json"), "--at", "2"});
    EXPECT_EQ(json::parse(r.err).at("error"), "InvalidDirection");
    EXPECT_TRUE(r.out.empty());
}
