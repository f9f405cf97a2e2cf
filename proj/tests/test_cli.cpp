#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "ordist/cli.hpp"
#include "ordist/constructions.hpp"
#include "ordist/json_io.hpp"
#include "support/random_specs.hpp"

namespace ordist {
namespace {

namespace fs = std::filesystem;
using io::json;

constexpr const char* kFigure1 =
    R"({"kind":"complete","n":4,"classes":[[[1,2]],[[2,3],[1,3]],[[3,4],[2,4]],[[1,4]]]})";

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ordist_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string put(const std::string& name, const std::string& text) const {
    io::write_file(path(name), text);
    return path(name);
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(Cli, RealizeFigureOne) {
  const std::string spec = put("fig1.json", kFigure1);
  EXPECT_EQ(run({"realize", spec, "-o", path("points.json"), "--report", path("report.json")}), 0);
  const PointConfig pts = io::parse_point_config(io::read_file(path("points.json")));
  EXPECT_EQ(pts.dim, 3);
  const json report = json::parse(io::read_file(path("report.json")));
  EXPECT_EQ(report["dim"], 3);
  EXPECT_EQ(report["verify"]["verdict"], "match");
  EXPECT_GT(report["margin"].get<double>(), 0.0);
}

TEST_F(Cli, RealizeLinearOnFivePointsAndCsv) {
  std::mt19937_64 gen(81);
  const std::string spec = put("lin.json", io::dump(io::to_json(testing::random_complete(gen, 5, true))));
  EXPECT_EQ(run({"realize", spec, "--csv", path("points.csv")}), 0);
  const PointConfig pts = io::parse_point_config(out_.str());
  EXPECT_EQ(pts.dim, 3);
  const std::string csv = io::read_file(path("points.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x1,x2,x3");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST_F(Cli, RealizeRejectsBadInput) {
  EXPECT_EQ(run({"realize", put("bad.json", "{not json")}), 2);
  const json diag = json::parse(err_.str());
  EXPECT_EQ(diag["error"], "ParseError");
  EXPECT_EQ(err_.str().find('\n'), err_.str().size() - 1);  // single line

  EXPECT_EQ(run({"realize", put("missing.json", R"({"kind":"complete","n":3,"classes":[[[1,2]],[[1,3]]]})")}), 2);
  EXPECT_EQ(json::parse(err_.str())["error"], "MissingPair");
  EXPECT_EQ(run({"realize", path("does_not_exist.json")}), 2);
}

TEST_F(Cli, RealizeReportsEpsilonExhaustion) {
  const std::string spec = put("fig1.json", kFigure1);
  EXPECT_EQ(run({"realize", spec, "--eta", "10", "--eps-steps", "3"}), 3);
  EXPECT_EQ(json::parse(err_.str())["error"], "EpsilonExhausted");
}

TEST_F(Cli, RealizeSelfCheckFailure) {
  // A split threshold wider than every class gap makes the self-check collapse classes.
  const std::string spec = put("fig1.json", kFigure1);
  EXPECT_EQ(run({"realize", spec, "--tol-abs", "10"}), 4);
}

TEST_F(Cli, VerifyMatchMismatchAndShape) {
  const std::string spec = put("fig1.json", kFigure1);
  ASSERT_EQ(run({"realize", spec, "-o", path("points.json")}), 0);
  EXPECT_EQ(run({"verify", spec, path("points.json")}), 0);
  EXPECT_EQ(json::parse(out_.str())["verdict"], "match");

  const double h = std::sqrt(2.0 / 3.0);
  const std::string tet = put("tet.json", R"({"dim":3,"P":[[0,0,0],[1,0,0],[0.5,0.8660254037844386,0],[0.5,0.28867513459481287,)" +
                                              std::to_string(h) + "]]}");
  EXPECT_EQ(run({"verify", spec, tet}), 1);
  EXPECT_FALSE(json::parse(out_.str())["witness"].is_null());

  const std::string flat = put("flat.json", R"({"dim":2,"P":[[0,0],[1,0],[0,1]]})");
  EXPECT_EQ(run({"verify", spec, flat}), 2);
  const std::string ragged = put("ragged.json", R"({"dim":2,"P":[[0,0],[1],[0,1],[1,1]]})");
  EXPECT_EQ(run({"verify", spec, ragged}), 2);
}

TEST_F(Cli, InduceExamples) {
  EXPECT_EQ(run({"induce", put("line.json", R"({"dim":1,"P":[[0],[1],[3]]})")}), 0);
  EXPECT_EQ(out_.str(), R"({"kind":"complete","n":3,"classes":[[[1,2]],[[2,3]],[[1,3]]]})"
                        "\n");

  EXPECT_EQ(run({"induce", put("bip.json", R"({"dim":1,"P":[[0],[10]],"Q":[[1],[2],[4]]})")}), 0);
  const OrderSpec b = io::parse_order_spec(out_.str());
  EXPECT_EQ(b.kind, PairKind::bipartite);
  EXPECT_EQ(b.n, 2);
  EXPECT_EQ(b.m, 3);

  EXPECT_EQ(run({"induce", put("junk.json", "[1,2]")}), 2);
}

TEST_F(Cli, RealizeThenInduceReproducesSpec) {
  std::mt19937_64 gen(82);
  for (int k = 0; k < 60; ++k) {
    OrderSpec spec;
    switch (k % 3) {
      case 0: spec = testing::random_complete(gen, 3 + k % 6); break;
      case 1: spec = testing::random_complete(gen, 3 + k % 6, true); break;
      default: spec = testing::random_bipartite(gen, 2 + k % 5, 2 + k % 4); break;
    }
    const std::string text = io::dump(io::to_json(spec));
    const std::string file = put("spec.json", text);
    ASSERT_EQ(run({"realize", file, "-o", path("pts.json"), "--report", path("rep.json")}), 0);
    ASSERT_EQ(run({"induce", path("pts.json")}), 0);
    EXPECT_EQ(out_.str(), text + "\n");
  }
}

TEST_F(Cli, GalleryExamples) {
  EXPECT_EQ(run({"gallery", "diameter_preorder", "5"}), 0);
  EXPECT_EQ(io::parse_order_spec(out_.str()).class_count(), 2);

  EXPECT_EQ(run({"gallery", "bip_cyclic_linear", "3", "-o", path("cyc.json")}), 0);
  const OrderSpec cyc = io::parse_order_spec(io::read_file(path("cyc.json")));
  EXPECT_EQ(cyc.kind, PairKind::bipartite);
  EXPECT_EQ(cyc.class_count(), 9);
  EXPECT_TRUE(is_linear(cyc));

  EXPECT_EQ(run({"gallery", "d4_linear", "5"}), 2);
  EXPECT_EQ(json::parse(err_.str())["error"], "BadSize");
  EXPECT_EQ(run({"gallery", "nope", "4"}), 2);
  EXPECT_EQ(json::parse(err_.str())["error"], "UnknownName");
}

TEST_F(Cli, FalsifyExitCodes) {
  ASSERT_EQ(run({"gallery", "diameter_preorder", "4", "-o", path("diam.json")}), 0);
  EXPECT_EQ(run({"falsify", path("diam.json"), "--dim", "2", "--restarts", "100", "--threads", "1"}), 1);
  EXPECT_EQ(json::parse(out_.str())["feasible"], false);
  EXPECT_EQ(run({"falsify", path("diam.json"), "--dim", "3", "--restarts", "100", "-o", path("f.json")}), 0);
  EXPECT_EQ(json::parse(io::read_file(path("f.json")))["feasible"], true);
  EXPECT_EQ(run({"falsify", path("diam.json"), "--dim", "0"}), 2);
  EXPECT_EQ(json::parse(err_.str())["error"], "BadConfig");
  EXPECT_EQ(run({"falsify", path("diam.json")}), 2);  // --dim is required
}

TEST_F(Cli, FalsifyIsDeterministic) {
  ASSERT_EQ(run({"gallery", "d4_linear", "4", "-o", path("d4.json")}), 0);
  const std::vector<std::string> args = {"falsify", path("d4.json"), "--dim", "1", "--restarts", "8",
                                         "--iters", "300", "--seed", "5"};
  auto with_threads = [&](const char* t) {
    std::vector<std::string> a = args;
    a.insert(a.end(), {"--threads", t});
    run(a);
    return out_.str();
  };
  const std::string first = with_threads("1");
  EXPECT_EQ(with_threads("1"), first);
  EXPECT_EQ(with_threads("3"), first);
}

TEST_F(Cli, UsageErrorsAndHelp) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(json::parse(err_.str())["error"], "UsageError");
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"gallery", "d4_linear", "four"}), 2);
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_NE(out_.str().find("falsify"), std::string::npos);
}

}  // namespace
}  // namespace ordist
