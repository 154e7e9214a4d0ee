#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "qdet/io.hpp"
#include "support/expect_error.hpp"

namespace qdet {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qdet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), {out, err});
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(QDET_FIXTURE_DIR) + "/" + name; }

class TempDir {
 public:
  TempDir()
      : path_(fs::temp_directory_path() /
              (std::string("qdet_cli_") +
               ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

TEST(Cli, CheckExitCodesFollowVerdict) {
  EXPECT_EQ(run_cli({"check", fixture("zero_plus.json"), fixture("tilted_09.json")}).code,
            cli::kSuccess);
  EXPECT_EQ(run_cli({"check", fixture("zero_plus.json"), fixture("tilted_half.json")}).code,
            cli::kNegative);
  EXPECT_EQ(run_cli({"check", fixture("basis2.json"), fixture("basis2.json")}).code,
            cli::kInconclusive);
  EXPECT_EQ(run_cli({"check", fixture("dependent3.json"), fixture("dependent3.json")}).code,
            cli::kInconclusive);
}

TEST(Cli, CheckReportsVerdictJson) {
  const RunResult r = run_cli({"check", fixture("zero_plus.json"), fixture("tilted_half.json")});
  const io::Json j = io::Json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "Infeasible");
  EXPECT_EQ(j.at("violating_pairs").size(), 1U);
}

TEST(Cli, InputErrorsExitTwo) {
  const RunResult missing = run_cli({"check", fixture("nope.json"), fixture("basis2.json")});
  EXPECT_EQ(missing.code, cli::kInputError);
  EXPECT_NE(missing.err.find("error:"), std::string::npos);
  EXPECT_TRUE(missing.out.empty());

  TempDir dir;
  {
    std::ofstream f(dir.file("bad.json"));
    f << R"({"dimension": 2, "states": [[1, 1]]})";
  }
  EXPECT_EQ(run_cli({"check", dir.file("bad.json"), fixture("basis2.json")}).code,
            cli::kInputError);
  EXPECT_EQ(run_cli({"check", fixture("zero_plus.json"), fixture("dependent3.json")}).code,
            cli::kInputError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"check", fixture("zero_plus.json")}).code, cli::kInputError);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, 0); }

TEST(Cli, SynthRefusalWritesNothing) {
  TempDir dir;
  const std::string out = dir.file("kraus.json");
  const RunResult r = run_cli(
      {"synth", fixture("zero_plus.json"), fixture("tilted_half.json"), "--out", out});
  EXPECT_EQ(r.code, cli::kNegative);
  EXPECT_NE(r.err.find("not synthesizable"), std::string::npos);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_FALSE(fs::exists(out + ".tmp"));
}

TEST(Cli, SynthThenApplyReproducesTargets) {
  TempDir dir;
  const std::string kraus = dir.file("kraus.json");
  const RunResult s =
      run_cli({"synth", fixture("zero_plus.json"), fixture("tilted_09.json"), "-o", kraus});
  ASSERT_EQ(s.code, cli::kSuccess) << s.err;
  ASSERT_TRUE(fs::exists(kraus));
  const io::Json kj = io::read_json_file(kraus);
  EXPECT_EQ(kj.at("operators").size(), 2U);
  EXPECT_LE(kj.at("verification").at("completeness_residual").get<double>(), 1e-9);

  const RunResult a = run_cli({"apply", kraus, fixture("zero_plus.json")});
  ASSERT_EQ(a.code, cli::kSuccess) << a.err;
  const io::Json results = io::Json::parse(a.out).at("results");
  ASSERT_EQ(results.size(), 2U);
  const StateSet target = io::state_set_from_json(io::read_json_file(fixture("tilted_09.json")));
  for (std::size_t k = 0; k < 2; ++k) {
    const ComplexMatrix rho = io::matrix_from_json(results[k].at("matrix"));
    const ComplexVector t = target.state(static_cast<Index>(k));
    EXPECT_LE((rho - t * t.adjoint()).norm(), 1e-9);
  }
}

TEST(Cli, ApplyMeasurementToDensity) {
  const RunResult r =
      run_cli({"apply", fixture("measurement_kraus.json"), fixture("plus_density.json")});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const io::Json j = io::Json::parse(r.out);
  const ComplexMatrix rho = io::matrix_from_json(j.at("matrix"));
  EXPECT_LE((rho - 0.5 * ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_NEAR(j.at("purity").get<double>(), 0.5, 1e-15);
}

TEST(Cli, ApplyChecksDimension) {
  TempDir dir;
  {
    std::ofstream f(dir.file("d3.json"));
    f << R"({"dimension": 3, "states": [[1, 0, 0]]})";
  }
  EXPECT_EQ(run_cli({"apply", fixture("measurement_kraus.json"), dir.file("d3.json")}).code,
            cli::kInputError);
}

TEST(Cli, CoherenceExitCodes) {
  const RunResult u = run_cli(
      {"coherence", fixture("zero_plus.json"), fixture("one_minus.json"), "-q", "1,0.5:0.5"});
  EXPECT_EQ(u.code, cli::kSuccess) << u.err;
  const io::Json j = io::Json::parse(u.out);
  EXPECT_TRUE(j.at("agree").get<bool>());

  const RunResult d = run_cli(
      {"coherence", fixture("zero_plus.json"), fixture("tilted_09.json"), "--coeffs", "1,1"});
  EXPECT_EQ(d.code, cli::kNegative);

  EXPECT_EQ(run_cli({"coherence", fixture("zero_plus.json"), fixture("tilted_half.json"), "-q",
                     "1,1"})
                .code,
            cli::kInputError);
  EXPECT_EQ(
      run_cli({"coherence", fixture("zero_plus.json"), fixture("one_minus.json"), "-q", "1,x"})
          .code,
      cli::kInputError);
}

TEST(Cli, SweepEmitsOneRowPerStep) {
  const RunResult r = run_cli(
      {"sweep", fixture("sweep_template.json"), "--start", "0.1", "--stop", "1.4", "--steps", "27"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "theta,min_eigenvalue,verdict,max_abs_mu,purity");
  int rows = 0;
  int feasible = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.find(",Feasible,") != std::string::npos) ++feasible;
  }
  EXPECT_EQ(rows, 27);
  // cos(theta) >= 1/sqrt2 up to theta = pi/4.
  EXPECT_GT(feasible, 0);
  EXPECT_LT(feasible, 27);
}

TEST(Cli, SweepParameterMustMatchTemplate) {
  EXPECT_EQ(run_cli({"sweep", fixture("sweep_template.json"), "--param", "phi", "--start", "0",
                     "--stop", "1", "--steps", "3"})
                .code,
            cli::kInputError);
  EXPECT_EQ(run_cli({"sweep", fixture("sweep_template.json"), "--start", "0", "--stop", "1",
                     "--steps", "1"})
                .code,
            cli::kInputError);
}

TEST(Cli, GenIsDeterministic) {
  const auto a = run_cli({"gen", "-d", "3", "-n", "2", "--seed", "42", "--mode", "independent"});
  const auto b = run_cli({"gen", "-d", "3", "-n", "2", "--seed", "42", "--mode", "independent"});
  const auto c = run_cli({"gen", "-d", "3", "-n", "2", "--seed", "43", "--mode", "independent"});
  ASSERT_EQ(a.code, cli::kSuccess) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  const StateSet s = io::state_set_from_json(io::Json::parse(a.out));
  EXPECT_EQ(s.dimension(), 3);
  EXPECT_EQ(s.size(), 2);
}

TEST(Cli, GenUnitaryModeUsesBase) {
  const auto r =
      run_cli({"gen", "--mode", "unitary", "--base", fixture("zero_plus.json"), "--seed", "5"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const StateSet img = io::state_set_from_json(io::Json::parse(r.out));
  const StateSet base = io::state_set_from_json(io::read_json_file(fixture("zero_plus.json")));
  EXPECT_LE((gram(img) - gram(base)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(run_cli({"gen", "--mode", "unitary"}).code, cli::kInputError);
}

TEST(Cli, ParseCoefficients) {
  const auto q = cli::parse_coefficients("1, -0.5:2,3e-1");
  ASSERT_EQ(q.size(), 3U);
  EXPECT_EQ(q[0], Complex(1.0, 0.0));
  EXPECT_EQ(q[1], Complex(-0.5, 2.0));
  EXPECT_EQ(q[2], Complex(0.3, 0.0));
  testing::expect_error(ErrorCode::ParseError, [] { cli::parse_coefficients(""); });
  testing::expect_error(ErrorCode::ParseError, [] { cli::parse_coefficients("1:"); });
}

}  // namespace
}  // namespace qdet
