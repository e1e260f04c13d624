#include "support.hpp"

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dynsig;
using dynsig::testing::r;
namespace fx = dynsig::fixtures;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        dir = fs::temp_directory_path() / ("dynsig_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) {
        auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string write(const std::string& name, const json& j) { return write(name, j.dump()); }
};

}  // namespace

TEST_F(CliTest, ValidateAcceptsExampleAndReportsOverlap) {
    auto ok = run_cli({"validate", write("ex.json", io::to_json(fx::example1()))});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_EQ(json::parse(ok.out)["ok"], true);

    Signal bad{fx::two_states(), {fx::cell2("a", {{0, r(1, 2)}}, {{0, 1}}), fx::cell2("b", {{0, r(1, 4)}, {r(1, 2), 1}}, {})}};
    auto res = run_cli({"validate", write("bad.json", io::to_json(bad))});
    EXPECT_EQ(res.code, 2);
    auto j = json::parse(res.out);
    EXPECT_EQ(j["ok"], false);
    EXPECT_EQ(j["state"], "theta_L");
    EXPECT_EQ(j["interval"], json::array({"0", "1/4"}));
}

TEST_F(CliTest, ExitCodesForBadInput) {
    EXPECT_EQ(run_cli({"validate", (dir / "missing.json").string()}).code, 3);
    EXPECT_EQ(run_cli({"validate", write("garbage.json", std::string("{not json"))}).code, 3);
    EXPECT_EQ(run_cli({"validate", write("schema.json", std::string(R"({"states": 3})"))}).code, 3);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 3);
    EXPECT_EQ(run_cli({}).code, 3);
    // cell names a state that is not declared
    auto unknown = R"({"states":["a"],"cells":[{"id":"x","sections":{"b":[["0","1"]]}}]})";
    EXPECT_EQ(run_cli({"validate", write("unknown.json", std::string(unknown))}).code, 2);
}

TEST_F(CliTest, DemoRoundTripsThroughExperiment) {
    auto demo = run_cli({"demo-example1"});
    ASSERT_EQ(demo.code, 0) << demo.err;
    auto j = json::parse(demo.out);
    EXPECT_EQ(io::dynamic_from(j), fx::example1());

    auto ex = run_cli({"experiment", "-"}, demo.out);
    ASSERT_EQ(ex.code, 0) << ex.err;
    const std::string expected =
        "pi(h,H|theta_L) = 1/4\n"
        "pi(h,H|theta_H) = 3/4\n"
        "pi(h,L|theta_L) = 0\n"
        "pi(h,L|theta_H) = 0\n"
        "pi(l,H|theta_L) = 1/2\n"
        "pi(l,H|theta_H) = 0\n"
        "pi(l,L|theta_L) = 1/4\n"
        "pi(l,L|theta_H) = 1/4\n";
    EXPECT_EQ(ex.out, expected);

    auto dec = run_cli({"--decimal", "experiment", "-"}, demo.out);
    EXPECT_NE(dec.out.find("pi(h,H|theta_H) = 3/4  (~0.750000)"), std::string::npos);
}

TEST_F(CliTest, ValueOnExample) {
    auto sig = write("ex.json", io::to_json(fx::example1()));
    auto prob = write("p.json", io::to_json(guess_the_state(fx::two_states(), 2, 1), fx::two_states()));
    for (auto extra : {std::vector<std::string>{}, {"--as"}, {"--bruteforce"}}) {
        std::vector<std::string> args{"value", sig, prob};
        args.insert(args.end(), extra.begin(), extra.end());
        auto res = run_cli(args);
        ASSERT_EQ(res.code, 0) << res.err;
        EXPECT_EQ(json::parse(res.out)["value"], "3/4");
    }
    auto skew = run_cli({"--decimal", "value", sig, prob, "--prior", R"({"theta_L":"1/4","theta_H":"3/4"})"});
    ASSERT_EQ(skew.code, 0) << skew.err;
    auto j = json::parse(skew.out);
    EXPECT_TRUE(j.contains("value_approx"));
    EXPECT_EQ(run_cli({"value", sig, prob, "--bruteforce", "--budget", "1"}).code, 2);
    EXPECT_EQ(run_cli({"value", sig, prob, "--prior", R"({"theta_L":"1/2","theta_H":"1/3"})"}).code, 2);
}

TEST_F(CliTest, RorDominatesAndFalsify) {
    auto ex = write("ex.json", io::to_json(fx::example1()));
    auto self = run_cli({"ror", ex, ex});
    EXPECT_EQ(self.code, 0);
    for (const auto& p : json::parse(self.out)["periods"])
        for (const auto& c : p["cells"]) EXPECT_EQ(c["detail"], "refine (self)");

    auto eta = write("eta.json", io::to_json(constant_dynamic(fx::blackwell_eta(), 2)));
    auto hat = write("hat.json", io::to_json(constant_dynamic(fx::blackwell_eta_hat(), 2)));
    auto ror = run_cli({"ror", eta, hat});
    EXPECT_EQ(ror.code, 1);
    auto rj = json::parse(ror.out);
    EXPECT_EQ(rj["first_failure"]["period"], 1);
    EXPECT_EQ(rj["first_failure"]["cell"], "s1");

    auto dom = run_cli({"dominates", "--nonrobust", eta, hat});
    EXPECT_EQ(dom.code, 1);
    EXPECT_TRUE(json::parse(dom.out).contains("note"));

    auto fals = run_cli({"falsify", eta, hat});
    EXPECT_EQ(fals.code, 1) << fals.err;
    auto fj = json::parse(fals.out);
    EXPECT_EQ(fj["found"], true);
    EXPECT_EQ(fj["w_dominant"], "3/4");
    EXPECT_EQ(fj["w_dominated"], "1");
    // the emitted problem is a valid input for `value`
    auto prob = write("cx.json", fj["problem"]);
    EXPECT_EQ(json::parse(run_cli({"value", eta, prob}).out)["value"], "3/4");
    EXPECT_EQ(json::parse(run_cli({"value", hat, prob}).out)["value"], "1");

    auto refused = run_cli({"falsify", ex, ex});
    EXPECT_EQ(refused.code, 2);
    auto mismatch = run_cli({"ror", ex, write("t3.json", io::to_json(trivial_dynamic(fx::two_states(), 3)))});
    EXPECT_EQ(mismatch.code, 2);
}

TEST_F(CliTest, JoinGenAndRender) {
    auto a = write("a.json", io::to_json(fx::blackwell_eta()));
    auto b = write("b.json", io::to_json(fx::swap_rho()));
    auto joined = run_cli({"join", a, b});
    ASSERT_EQ(joined.code, 0) << joined.err;
    EXPECT_EQ(io::signal_from(json::parse(joined.out)), join(fx::blackwell_eta(), fx::swap_rho()));

    auto g1 = run_cli({"gen", "--kind", "dynamic", "--seed", "5", "--index", "2"});
    auto g2 = run_cli({"gen", "--kind", "dynamic", "--seed", "5", "--index", "2"});
    ASSERT_EQ(g1.code, 0);
    EXPECT_EQ(g1.out, g2.out);
    EXPECT_FALSE(validate_dynamic(io::dynamic_from(json::parse(g1.out))));
    EXPECT_EQ(run_cli({"gen", "--kind", "nonsense"}).code, 3);

    auto many = run_cli({"gen", "--kind", "dynamic", "--seed", "5", "--count", "4"});
    ASSERT_EQ(many.code, 0);
    auto corpus = io::corpus_from(json::parse(many.out));
    ASSERT_EQ(corpus.size(), 4u);
    EXPECT_EQ(corpus[2], io::dynamic_from(json::parse(g1.out)));
    EXPECT_THROW(io::corpus_from(json::parse(g1.out)), io::SchemaError);

    auto problem = run_cli({"gen", "--kind", "problem", "--seed", "1"});
    ASSERT_EQ(problem.code, 0);
    auto pj = json::parse(problem.out);
    StateSpace states{pj["states"].get<std::vector<std::string>>()};
    EXPECT_NO_THROW(io::problem_from(pj, states));

    auto out_path = (dir / "ex.svg").string();
    auto svg = run_cli({"render", write("ex.json", io::to_json(fx::example1())), "-o", out_path});
    ASSERT_EQ(svg.code, 0) << svg.err;
    EXPECT_TRUE(svg.out.empty());
    std::ifstream f(out_path);
    std::string text((std::istreambuf_iterator<char>(f)), {});
    EXPECT_EQ(text.rfind("<svg", 0), 0u);
    EXPECT_NE(text.find(R"(id="period-2")"), std::string::npos);
    EXPECT_NE(text.find(">lH<"), std::string::npos);
}
