#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "boostmargin/io.hpp"

namespace fs = std::filesystem;
using boostmargin::io::json;
namespace io = boostmargin::io;

namespace {

const fs::path kDemo = BOOSTMARGIN_DEMO_DIR;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("boostmargin_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(BOOSTMARGIN_CLI) + " " + args + " >" + (dir_ / "stdout.txt").string() +
                            " 2>" + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string demo(const std::string& name) const { return (kDemo / name).string(); }
  std::string read(const std::string& name) const { return io::read_text_file(dir_ / name); }

  fs::path dir_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_F(Cli, NoOrUnknownSubcommandIsInputError) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, TrainWritesResultAndRoundsCsv) {
  ASSERT_EQ(run("train --data " + demo("line_distribution.json") + " --class " + demo("line_stumps.json") +
                " --gamma 0.15 --m 64 --seed 3 --out " + path("r.json") + " --rounds-csv " + path("r.csv")),
            0)
      << read("stderr.txt");
  const json r = io::read_json_file(path("r.json"));
  EXPECT_GE(r.at("achieved_min_margin").get<double>(), 0.075);
  EXPECT_EQ(r.at("stop_reason"), "target_margin");
  const auto csv = lines(read("r.csv"));
  EXPECT_EQ(csv.front(), "t,epsilon,alpha,min_margin");
  EXPECT_EQ(csv.size(), r.at("rounds").get<std::size_t>() + 1);
  EXPECT_TRUE(fs::exists(path("r.json.meta.json")));

  ASSERT_EQ(run("eval --classifier " + path("r.json") + " --data " + demo("line_distribution.json") +
                " --gamma 0.05 --out " + path("e.json")),
            0);
  const json e = io::read_json_file(path("e.json"));
  EXPECT_EQ(e.at("kind"), "vote");
  EXPECT_EQ(e.at("exact_error").get<double>(), 0.0);
  EXPECT_EQ(e.at("true_margin_loss").get<double>(), 0.0);
}

TEST_F(Cli, TrainOnSequenceAndEvalToStdout) {
  ASSERT_EQ(run("train --data " + demo("line_sequence.json") + " --class " + demo("line_stumps.json") +
                " --gamma 0.15 --out " + path("r.json")),
            0)
      << read("stderr.txt");
  ASSERT_EQ(run("eval --classifier " + path("r.json") + " --data " + demo("line_sequence.json")), 0);
  const json e = io::parse_json(read("stdout.txt"));
  EXPECT_EQ(e.at("empirical_error").get<double>(), 0.0);
  EXPECT_GE(e.at("min_margin").get<double>(), 0.075);
}

TEST_F(Cli, EdgeViolationExitsTwoWithPartialLogs) {
  EXPECT_EQ(run("train --data " + demo("line_sequence.json") + " --class " + demo("constant_class.json") +
                " --gamma 0.1 --out " + path("r.json")),
            2);
  EXPECT_FALSE(fs::exists(path("r.json")));
  const json p = io::read_json_file(path("r.json.partial.json"));
  EXPECT_EQ(p.at("error"), "edge_violation");
  // the +1 constant has error 1/3 on round one, then reweighting leaves both constants at 1/2
  EXPECT_EQ(p.at("round"), 2);
  ASSERT_EQ(p.at("logs").size(), 1u);
  EXPECT_NEAR(p.at("logs")[0].at("epsilon").get<double>(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.at("best_error").get<double>(), 0.5, 1e-15);
}

TEST_F(Cli, InputErrorsExitOneWithoutOutput) {
  EXPECT_EQ(run("train --data " + path("missing.json") + " --class " + demo("line_stumps.json") +
                " --gamma 0.1 --out " + path("r.json")),
            1);
  EXPECT_FALSE(fs::exists(path("r.json")));
  EXPECT_EQ(run("train --data " + demo("line_distribution.json") + " --class " + demo("line_stumps.json") +
                " --gamma 0.7 --m 10 --out " + path("r.json")),
            1);
  EXPECT_EQ(run("train --data " + demo("line_distribution.json") + " --class " + demo("line_stumps.json") +
                " --gamma 0.1 --out " + path("r.json")),
            1);
  io::write_text_file(path("bad.json"), "{\"generator\": {}, \"m_grid\": []}");
  EXPECT_EQ(run("scaling --config " + path("bad.json") + " --out-csv " + path("s.csv")), 1);
  EXPECT_FALSE(fs::exists(path("s.csv")));
  io::write_text_file(path("broken.json"), "{");
  EXPECT_EQ(run("bounds-report --grid " + path("broken.json") + " --out-csv " + path("b.csv")), 1);
  EXPECT_EQ(run("oracle --input " + demo("cover_table.json") + " --quantity area"), 1);
}

TEST_F(Cli, Maj3) {
  ASSERT_EQ(run("maj3 --data " + demo("line_distribution.json") + " --class " + demo("line_stumps.json") +
                " --m 40 --gamma 0.15 --seed 2 --out " + path("m.json")),
            0)
      << read("stderr.txt");
  const json m = io::read_json_file(path("m.json"));
  EXPECT_LE(m.at("exact_error").get<double>(), m.at("two_agree_witness").get<double>());
  EXPECT_EQ(m.at("members").size(), 3u);
  ASSERT_EQ(run("eval --classifier " + path("m.json") + " --data " + demo("line_distribution.json")), 0);
  EXPECT_EQ(io::parse_json(read("stdout.txt")).at("exact_error"), m.at("exact_error"));
}

TEST_F(Cli, ScalingWritesCsvSummaryAndSvg) {
  ASSERT_EQ(run("scaling --config " + demo("scaling_small.json") + " --out-csv " + path("s.csv") + " --svg " +
                path("s.svg") + " --trials-csv " + path("t.csv")),
            0)
      << read("stderr.txt");
  const auto csv = lines(read("s.csv"));
  ASSERT_EQ(csv.size(), 4u);
  EXPECT_EQ(csv[0], "m,mean_error,std_error,trials,optimal_rate,adaboost_bound");
  EXPECT_EQ(csv[1].substr(0, 3), "16,");
  const json summary = io::read_json_file(path("s.summary.json"));
  EXPECT_EQ(summary.at("rows").size(), 3u);
  EXPECT_NE(read("s.svg").find("<svg "), std::string::npos);
  EXPECT_EQ(lines(read("t.csv")).size(), 1u + 3u * 30u);
}

TEST_F(Cli, BoundsReport) {
  io::write_text_file(path("g.json"), R"({"d": 10, "m": 100000000, "gamma": 0.1, "delta": 0.1})");
  ASSERT_EQ(run("bounds-report --grid " + path("g.json") + " --out-csv " + path("b.csv")), 0);
  const auto rows = lines(read("b.csv"));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1].substr(0, 11), "new_margin,");
  EXPECT_NE(rows[1].find(",0,,1,"), std::string::npos) << "N column is empty when absent";

  ASSERT_EQ(run("bounds-report --grid " + demo("bounds_grid.json") + " --out-csv " + path("demo.csv")), 0);
  const auto demo_rows = lines(read("demo.csv"));
  ASSERT_EQ(demo_rows.size(), 1u + 8u * 8u);
  // every bound is non-increasing along the m axis
  for (std::size_t b = 0; b < 8; ++b) {
    double prev = 1e300;
    for (std::size_t k = 0; k < 8; ++k) {
      const std::string& row = demo_rows[1 + k * 8 + b];
      const auto cut = row.find_last_of(',');
      const auto start = row.find_last_of(',', cut - 1) + 1;
      const double v = std::stod(row.substr(start, cut - start));
      EXPECT_LE(v, prev) << row;
      prev = v;
    }
  }
}

TEST_F(Cli, Oracle) {
  ASSERT_EQ(run("oracle --input " + demo("cover_table.json") + " --quantity cover --alpha 0.5"), 0);
  json r = io::parse_json(read("stdout.txt"));
  EXPECT_EQ(r.at("value"), 3);
  EXPECT_EQ(r.at("exact"), true);
  ASSERT_EQ(run("oracle --input " + demo("stumps_on_line.json") + " --quantity vc --out " + path("vc.json")), 0);
  EXPECT_EQ(io::read_json_file(path("vc.json")).at("value"), 2);
  EXPECT_EQ(run("oracle --input " + demo("stumps_on_line.json") + " --quantity fat --beta 0.4 --hull-q 3"), 1);
  ASSERT_EQ(run("oracle --input " + demo("sign_table.json") + " --quantity fat --beta 0.4 --hull-q 3"), 0)
      << read("stderr.txt");
  EXPECT_GE(io::parse_json(read("stdout.txt")).at("value").get<int>(), 1);
  ASSERT_EQ(run("oracle --input " + demo("sign_table.json") + " --quantity fat --beta 0.4 --hull-q 3 --clip 0.3"), 0);
  EXPECT_EQ(io::parse_json(read("stdout.txt")).at("value"), 0);
}

TEST_F(Cli, ProbeAndGenerate) {
  ASSERT_EQ(run("probe-lemma31 --config " + demo("probe_lemma31.json") + " --out " + path("p.json")), 0)
      << read("stderr.txt");
  const json p = io::read_json_file(path("p.json"));
  EXPECT_EQ(p.at("trials"), 10000);
  EXPECT_EQ(p.at("consistent"), true);
  ASSERT_EQ(run("generate --config " + demo("generator.json") + " --out-data " + path("d.json") + " --out-class " +
                path("c.json")),
            0);
  EXPECT_EQ(io::read_json_file(path("d.json")).at("points").size(), 200u);
  EXPECT_EQ(io::read_json_file(path("c.json")).at("hypotheses").size(), 2u * 8u * 64u);
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  const std::string train = "train --data " + demo("line_distribution.json") + " --class " + demo("line_stumps.json") +
                            " --gamma 0.15 --m 50 --seed 11 --out ";
  ASSERT_EQ(run(train + path("a.json")), 0);
  ASSERT_EQ(run(train + path("b.json")), 0);
  EXPECT_EQ(read("a.json"), read("b.json"));
  const std::string scaling = "scaling --config " + demo("scaling_small.json") + " --out-csv ";
  ASSERT_EQ(run(scaling + path("a.csv")), 0);
  ASSERT_EQ(run(scaling + path("b.csv")), 0);
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  EXPECT_EQ(read("a.summary.json"), read("b.summary.json"));
}
