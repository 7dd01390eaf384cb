// boostmargin command-line driver.
//
// Exit codes: 0 success, 1 input or config error, 2 weak-learnability
// violation, 3 internal invariant failure.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "boostmargin/boosting.hpp"
#include "boostmargin/bounds.hpp"
#include "boostmargin/ensembles.hpp"
#include "boostmargin/errors.hpp"
#include "boostmargin/experiments.hpp"
#include "boostmargin/io.hpp"
#include "boostmargin/oracle.hpp"
#include "boostmargin/parallel.hpp"

namespace bm = boostmargin;
namespace io = boostmargin::io;
namespace ex = boostmargin::experiments;
namespace fs = std::filesystem;
using io::json;

namespace {

enum Exit { kOk = 0, kInput = 1, kEdge = 2, kInvariant = 3 };

void require_file(const std::string& path, const char* flag) {
  if (!fs::is_regular_file(path)) throw bm::InputError(std::string(flag) + ": no such file '" + path + "'");
}

// Timestamps and wall times live only in this sidecar so the main outputs
// of repeated runs are byte-identical.
void write_meta(const std::string& out, const std::string& command, std::chrono::steady_clock::time_point start) {
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  io::write_json_file(out + ".meta.json", {{"command", command},
                                           {"finished_at", stamp},
                                           {"wall_seconds", wall},
                                           {"threads", bm::worker_count()}});
}

struct TrainArgs {
  std::string data, cls, out, rounds_csv;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> m;
  double round_constant = 16.0;
  std::optional<double> target_margin;
};

int run_train(const TrainArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  require_file(a.data, "--data");
  require_file(a.cls, "--class");
  bm::require(a.gamma > 0.0 && a.gamma < 0.5, "--gamma must lie in (0, 1/2)");
  bm::require(a.round_constant > 0.0, "--round-constant must be positive");
  const json data = io::read_json_file(a.data);
  const bm::HypothesisClass hc = io::class_from_json(io::read_json_file(a.cls));
  std::optional<bm::TrainingSequence> s;
  if (data.contains("examples")) {
    s = io::training_sequence_from_json(data);
  } else {
    bm::require(a.m.has_value() && *a.m >= 1, "--m is required when --data is a distribution");
    s = bm::sample_training_sequence(io::distribution_from_json(data), *a.m, a.seed);
  }
  bm::StopRule stop = bm::StopRule::for_edge(a.gamma, s->size(), a.round_constant);
  if (a.target_margin) stop.target_min_margin = *a.target_margin;
  try {
    const bm::BoostResult r = bm::adaboost(*s, hc, a.gamma, stop);
    io::write_json_file(a.out, io::to_json(r));
    if (!a.rounds_csv.empty()) io::write_text_file(a.rounds_csv, io::rounds_csv(r.logs));
  } catch (const bm::EdgeViolation& e) {
    io::write_json_file(a.out + ".partial.json", {{"error", "edge_violation"},
                                                  {"best_error", e.best_error()},
                                                  {"gamma", a.gamma},
                                                  {"round", e.round()},
                                                  {"logs", io::to_json(e.partial_logs())}});
    throw;
  }
  write_meta(a.out, "train", start);
  return kOk;
}

struct EvalArgs {
  std::string classifier, data, out;
  std::optional<double> gamma;
};

int run_eval(const EvalArgs& a) {
  require_file(a.classifier, "--classifier");
  require_file(a.data, "--data");
  json cj = io::read_json_file(a.classifier);
  const json data = io::read_json_file(a.data);
  if (cj.contains("classifier")) cj = cj.at("classifier");
  if (cj.contains("ensemble")) cj = cj.at("ensemble");
  json out;
  if (cj.contains("members")) {
    const bm::MajorityEnsemble e = io::ensemble_from_json(cj);
    out["kind"] = "ensemble";
    out["protocol"] = e.protocol();
    if (data.contains("examples")) {
      const auto s = io::training_sequence_from_json(data);
      std::size_t wrong = 0;
      for (const auto& x : s) wrong += x.label * e(x.point) <= 0;
      out["empirical_error"] = static_cast<double>(wrong) / static_cast<double>(s.size());
    } else {
      const auto d = io::distribution_from_json(data);
      ex::SupportEvaluator eval(d);
      std::vector<std::vector<double>> values;
      for (const auto& f : e.members()) values.push_back(eval.values(f));
      const auto errs = bm::majority_errors_from_values(values, d);
      out["exact_error"] = errs.ensemble;
      out["witness"] = errs.witness;
    }
  } else {
    const bm::VotingClassifier f = io::voting_from_json(cj);
    out["kind"] = "vote";
    if (data.contains("examples")) {
      const auto s = io::training_sequence_from_json(data);
      const bm::MarginProfile prof(f, s);
      out["empirical_error"] = prof.loss(0.0);
      out["min_margin"] = prof.min();
      if (a.gamma) out["empirical_margin_loss"] = prof.loss(*a.gamma);
    } else {
      const auto d = io::distribution_from_json(data);
      out["exact_error"] = ex::SupportEvaluator(d).error(f);
      if (a.gamma) out["true_margin_loss"] = bm::true_margin_loss(f, d, *a.gamma);
    }
  }
  if (a.gamma) out["gamma"] = *a.gamma;
  if (a.out.empty())
    std::cout << io::dump(out);
  else
    io::write_json_file(a.out, out);
  return kOk;
}

struct Maj3Args {
  std::string data, cls, out;
  std::size_t m = 0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
};

int run_maj3(const Maj3Args& a) {
  const auto start = std::chrono::steady_clock::now();
  require_file(a.data, "--data");
  require_file(a.cls, "--class");
  bm::require(a.m >= 2, "--m must be at least 2");
  bm::require(a.gamma > 0.0 && a.gamma < 0.5, "--gamma must lie in (0, 1/2)");
  const auto d = io::distribution_from_json(io::read_json_file(a.data));
  const auto hc = io::class_from_json(io::read_json_file(a.cls));
  std::vector<bm::BoostResult> results;
  const auto e = bm::train_majority_of_3(d, a.m, hc, a.gamma, a.seed, &results);
  ex::SupportEvaluator eval(d);
  std::vector<std::vector<double>> values;
  json members = json::array();
  for (std::size_t j = 0; j < results.size(); ++j) {
    values.push_back(eval.values(results[j].classifier));
    members.push_back({{"rounds", results[j].logs.size()},
                       {"achieved_min_margin", results[j].achieved_min_margin},
                       {"stop_reason", bm::to_string(results[j].stop_reason)},
                       {"exact_error", bm::exact_error_from_values(values.back(), d)}});
  }
  const auto errs = bm::majority_errors_from_values(values, d);
  bm::ensure(errs.ensemble <= errs.witness, "majority error exceeds the two-agree witness");
  io::write_json_file(a.out, {{"ensemble", io::to_json(e)},
                              {"exact_error", errs.ensemble},
                              {"two_agree_witness", errs.witness},
                              {"members", std::move(members)},
                              {"m", a.m},
                              {"gamma", a.gamma},
                              {"seed", a.seed}});
  write_meta(a.out, "maj3", start);
  return kOk;
}

struct ScalingArgs {
  std::string config, out_csv, out_json, svg, trials_csv;
};

int run_scaling(const ScalingArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  require_file(a.config, "--config");
  const ex::ScalingConfig cfg = io::scaling_config_from_json(io::read_json_file(a.config));
  const ex::ScalingReport rep = ex::scaling_experiment(cfg);
  const std::string summary = a.out_json.empty() ? fs::path(a.out_csv).replace_extension(".summary.json").string() : a.out_json;
  io::write_text_file(a.out_csv, io::scaling_csv(rep));
  io::write_json_file(summary, io::scaling_summary(rep));
  if (!a.svg.empty()) io::write_text_file(a.svg, io::scaling_svg(rep));
  if (!a.trials_csv.empty()) io::write_text_file(a.trials_csv, io::trials_csv(rep));
  write_meta(a.out_csv, "scaling", start);
  const auto& fit = rep.fit;
  std::cerr << "slope " << io::format_double(fit.slope) << " (se " << io::format_double(fit.slope_se) << ")"
            << (fit.floor_reached ? ", error floor reached" : "") << "\n";
  return kOk;
}

int run_bounds(const std::string& grid, const std::string& out) {
  require_file(grid, "--grid");
  const auto cells = io::bound_grid_from_json(io::read_json_file(grid));
  io::write_text_file(out, io::bounds_csv(cells));
  return kOk;
}

struct OracleArgs {
  std::string input, quantity, out;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> clip;
  std::optional<int> hull_q;
};

int run_oracle(const OracleArgs& a) {
  require_file(a.input, "--input");
  const json in = io::read_json_file(a.input);
  bm::oracle::FunctionTable t;
  if (in.contains("rows")) {
    t = io::table_from_json(in);
  } else {
    const auto hc = io::class_from_json(io::detail::field(in, "class"));
    std::vector<bm::Point> pts;
    for (const auto& p : io::detail::field(in, "points")) pts.push_back(io::point_from_json(p));
    bm::require(!pts.empty(), "oracle needs at least one point");
    t = bm::oracle::restrict_class(hc, pts);
  }
  if (a.hull_q) t = bm::oracle::grid_convex_hull(t, *a.hull_q);
  if (a.clip) t = bm::oracle::clip_table(t, *a.clip);
  json out = {{"quantity", a.quantity}, {"rows", t.rows()}, {"cols", t.cols()}};
  if (a.quantity == "cover") {
    bm::require(a.alpha >= 0.0, "--alpha must be non-negative");
    const auto r = bm::oracle::covering_number_exact(t, a.alpha);
    out["value"] = r.size;
    out["exact"] = r.exact;
    out["witness"] = {{"centers", r.centers}};
    out["alpha"] = a.alpha;
  } else if (a.quantity == "fat") {
    bm::require(a.beta > 0.0, "--beta must be positive");
    const auto r = bm::oracle::fat_shattering_exact(t, a.beta);
    out["value"] = r.dimension;
    out["exact"] = true;
    out["witness"] = {{"columns", r.columns}, {"levels", r.levels}};
    out["beta"] = a.beta;
  } else {
    const auto r = bm::oracle::vc_dimension_exact(t);
    out["value"] = r.dimension;
    out["exact"] = true;
    out["witness"] = {{"columns", r.witness}};
  }
  if (a.out.empty())
    std::cout << io::dump(out);
  else
    io::write_json_file(a.out, out);
  return kOk;
}

int run_probe(const std::string& config, const std::string& out) {
  const auto start = std::chrono::steady_clock::now();
  require_file(config, "--config");
  const auto cfg = io::probe_config_from_json(io::read_json_file(config));
  const auto r = ex::lemma31_probe(cfg);
  json j = io::to_json(r);
  j["slack_constant"] = cfg.slack_constant;
  j["m"] = cfg.m;
  j["delta"] = cfg.delta;
  io::write_json_file(out, j);
  write_meta(out, "probe-lemma31", start);
  return kOk;
}

int run_generate(const std::string& config, const std::string& data_out, const std::string& class_out) {
  require_file(config, "--config");
  const json cj = io::read_json_file(config);
  const auto cfg = io::generator_from_json(cj.contains("generator") ? cj.at("generator") : cj);
  const auto p = ex::make_weak_learnable(cfg);
  io::write_json_file(data_out, io::to_json(p.distribution));
  io::write_json_file(class_out, io::to_json(p.hypotheses));
  std::cerr << "min probe edge " << io::format_double(p.min_probe_edge) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boosting, margin bounds and combinatorial oracles on finite problems"};
  app.require_subcommand(1, 1);

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Run AdaBoost and write the BoostResult JSON");
  c_train->add_option("--data", train.data, "Training sequence or distribution JSON")->required();
  c_train->add_option("--class", train.cls, "Hypothesis class JSON")->required();
  c_train->add_option("--gamma", train.gamma, "Weak learner edge in (0, 1/2)")->required();
  c_train->add_option("--seed", train.seed, "Sampling seed when --data is a distribution");
  c_train->add_option("--m", train.m, "Sample size when --data is a distribution");
  c_train->add_option("--out", train.out, "BoostResult JSON path")->required();
  c_train->add_option("--rounds-csv", train.rounds_csv, "Per-round CSV (t, epsilon, alpha, min_margin)");
  c_train->add_option("--round-constant", train.round_constant, "Constant in the default round cap");
  c_train->add_option("--target-margin", train.target_margin, "Stop margin (default gamma/2)");

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "Evaluate a vote or ensemble on a distribution or sequence");
  c_eval->add_option("--classifier", eval.classifier, "Vote, BoostResult, ensemble or maj3 output JSON")->required();
  c_eval->add_option("--data", eval.data, "Distribution or training sequence JSON")->required();
  c_eval->add_option("--gamma", eval.gamma, "Also report the margin loss at this level");
  c_eval->add_option("--out", eval.out, "Result JSON path (default stdout)");

  Maj3Args maj3;
  auto* c_maj3 = app.add_subcommand("maj3", "Train a majority of three AdaBoost votes");
  c_maj3->add_option("--data", maj3.data, "Distribution JSON")->required();
  c_maj3->add_option("--class", maj3.cls, "Hypothesis class JSON")->required();
  c_maj3->add_option("--m", maj3.m, "Sample size per member")->required();
  c_maj3->add_option("--gamma", maj3.gamma, "Weak learner edge")->required();
  c_maj3->add_option("--seed", maj3.seed, "Master seed");
  c_maj3->add_option("--out", maj3.out, "Result JSON path")->required();

  ScalingArgs scaling;
  auto* c_scaling = app.add_subcommand("scaling", "Mean exact error against m with a log-log slope fit");
  c_scaling->add_option("--config", scaling.config, "Scaling config JSON")->required();
  c_scaling->add_option("--out-csv", scaling.out_csv, "Per-m CSV")->required();
  c_scaling->add_option("--out-json", scaling.out_json, "Summary JSON (default: CSV path with .summary.json)");
  c_scaling->add_option("--svg", scaling.svg, "Log-log chart");
  c_scaling->add_option("--trials-csv", scaling.trials_csv, "Per-trial CSV");

  std::string grid, bounds_out;
  auto* c_bounds = app.add_subcommand("bounds-report", "Evaluate every bound formula over a grid");
  c_bounds->add_option("--grid", grid, "Grid JSON")->required();
  c_bounds->add_option("--out-csv", bounds_out, "Output CSV")->required();

  OracleArgs orc;
  auto* c_oracle = app.add_subcommand("oracle", "Exact cover size, fat-shattering or VC dimension");
  c_oracle->add_option("--input", orc.input, "FunctionTable {rows} or {class, points} JSON")->required();
  c_oracle->add_option("--quantity", orc.quantity, "cover, fat or vc")
      ->required()
      ->check(CLI::IsMember({"cover", "fat", "vc"}));
  c_oracle->add_option("--alpha", orc.alpha, "Cover scale");
  c_oracle->add_option("--beta", orc.beta, "Fat-shattering scale");
  c_oracle->add_option("--clip", orc.clip, "Clip the table at this level first");
  c_oracle->add_option("--hull-q", orc.hull_q, "Replace the table by its grid convex hull");
  c_oracle->add_option("--out", orc.out, "Result JSON path (default stdout)");

  std::string probe_cfg, probe_out;
  auto* c_probe = app.add_subcommand("probe-lemma31", "Monte Carlo margin-deviation probe on a tiny instance");
  c_probe->add_option("--config", probe_cfg, "Probe config JSON")->required();
  c_probe->add_option("--out", probe_out, "Result JSON path")->required();

  std::string gen_cfg, gen_data, gen_class;
  auto* c_gen = app.add_subcommand("generate", "Write a weak-learnable distribution and stump class");
  c_gen->add_option("--config", gen_cfg, "Generator config JSON")->required();
  c_gen->add_option("--out-data", gen_data, "Distribution JSON path")->required();
  c_gen->add_option("--out-class", gen_class, "Hypothesis class JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (c_train->parsed()) return run_train(train);
    if (c_eval->parsed()) return run_eval(eval);
    if (c_maj3->parsed()) return run_maj3(maj3);
    if (c_scaling->parsed()) return run_scaling(scaling);
    if (c_bounds->parsed()) return run_bounds(grid, bounds_out);
    if (c_oracle->parsed()) return run_oracle(orc);
    if (c_probe->parsed()) return run_probe(probe_cfg, probe_out);
    if (c_gen->parsed()) return run_generate(gen_cfg, gen_data, gen_class);
  } catch (const bm::EdgeViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEdge;
  } catch (const bm::GenerationFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEdge;
  } catch (const bm::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const bm::InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
  return kInput;
}
