#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boostmargin/boosting.hpp"
#include "boostmargin/bounds.hpp"
#include "boostmargin/domain.hpp"
#include "boostmargin/ensembles.hpp"
#include "boostmargin/errors.hpp"
#include "boostmargin/experiments.hpp"
#include "boostmargin/oracle.hpp"
#include "boostmargin/voting.hpp"

// JSON, CSV and SVG encodings. Every floating value is written with 17
// significant digits so files round-trip bit-exactly.

namespace boostmargin::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Text and number formatting

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_json(std::ostringstream& out, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        write_json(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      out << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out << (flat && indent >= 0 ? ", " : ",");
        first = false;
        if (!flat) newline(depth + 1);
        write_json(out, v, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out << "null";
        return;
      }
      std::string s = format_double(v);
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out << s;
      return;
    }
    default:
      out << j.dump();
  }
}

}  // namespace detail

/// Deterministic serialization: sorted keys, %.17g floats.
inline std::string dump(const json& j, int indent = 2) {
  std::ostringstream out;
  detail::write_json(out, j, indent, 0);
  if (indent >= 0) out << '\n';
  return out.str();
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

inline json parse_json(const std::string& text, const std::string& what = "input") {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

inline json read_json_file(const std::filesystem::path& path) {
  return parse_json(read_text_file(path), "'" + path.string() + "'");
}

inline void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, dump(j)); }

// ---------------------------------------------------------------------------
// Field helpers

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field '") + what + "' has the wrong type");
  }
}

template <class T>
T get(const json& j, const char* key) {
  return as<T>(field(j, key), key);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return as<T>(j.at(key), key);
}

inline Label get_label(const json& j, const char* what) {
  const int v = as<int>(j, what);
  require(is_label(v), std::string(what) + " must be -1 or +1");
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Domain

inline json to_json(const Point& p) {
  if (p.is_indexed()) return p.index();
  return json(std::vector<double>(p.features().begin(), p.features().end()));
}

inline Point point_from_json(const json& j) {
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0))
    return Point::indexed(j.get<std::size_t>());
  if (j.is_array()) return Point::featured(detail::as<std::vector<double>>(j, "point"));
  throw InputError("a point is a non-negative index or an array of features");
}

inline json to_json(const Hypothesis& h) {
  if (h.is_stump()) {
    const Stump& s = h.stump();
    return {{"kind", "stump"}, {"feature", s.feature}, {"threshold", s.threshold}, {"polarity", s.polarity}};
  }
  return {{"kind", "table"}, {"outputs", h.table().outputs}};
}

inline Hypothesis hypothesis_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<Label> out;
    for (const auto& v : j) out.push_back(detail::get_label(v, "table output"));
    return TruthTable{std::move(out)};
  }
  const auto kind = detail::get_or<std::string>(j, "kind", j.contains("outputs") ? "table" : "stump");
  if (kind == "table") {
    std::vector<Label> out;
    for (const auto& v : detail::field(j, "outputs")) out.push_back(detail::get_label(v, "table output"));
    return TruthTable{std::move(out)};
  }
  require(kind == "stump", "unknown hypothesis kind '" + kind + "'");
  const auto feature = detail::get<long long>(j, "feature");
  require(feature >= 0, "stump feature must be non-negative");
  const auto threshold = detail::get<double>(j, "threshold");
  require(std::isfinite(threshold), "stump threshold must be finite");
  return Stump{static_cast<std::size_t>(feature), threshold, detail::get_label(detail::field(j, "polarity"), "polarity")};
}

inline json to_json(const HypothesisClass& hc) {
  json hs = json::array();
  for (const auto& h : hc) {
    json e = to_json(h);
    e.erase("kind");
    hs.push_back(std::move(e));
  }
  json out = {{"kind", hc.is_stumps() ? "stumps" : "table"}, {"hypotheses", std::move(hs)}};
  out["declared_vc"] = hc.declared_vc() ? json(*hc.declared_vc()) : json(nullptr);
  return out;
}

inline HypothesisClass class_from_json(const json& j) {
  const auto kind = detail::get<std::string>(j, "kind");
  require(kind == "stumps" || kind == "table", "hypothesis class kind must be 'stumps' or 'table'");
  std::vector<Hypothesis> hs;
  for (const auto& e : detail::field(j, "hypotheses")) {
    json entry = e;
    if (entry.is_object() && !entry.contains("kind")) entry["kind"] = kind == "stumps" ? "stump" : "table";
    hs.push_back(hypothesis_from_json(entry));
  }
  std::optional<int> vc;
  if (j.contains("declared_vc") && !j.at("declared_vc").is_null()) {
    vc = detail::get<int>(j, "declared_vc");
    require(*vc >= 0, "declared_vc must be non-negative");
  }
  return HypothesisClass(std::move(hs), vc);
}

inline json to_json(const DiscreteDistribution& d) {
  json pts = json::array();
  for (const auto& p : d.points()) pts.push_back(to_json(p));
  return {{"points", std::move(pts)}, {"probs", d.probs()}, {"target", d.target()}};
}

inline DiscreteDistribution distribution_from_json(const json& j) {
  std::vector<Point> pts;
  for (const auto& p : detail::field(j, "points")) pts.push_back(point_from_json(p));
  const auto probs = detail::get<std::vector<double>>(j, "probs");
  std::vector<Label> target;
  for (const auto& v : detail::field(j, "target")) target.push_back(detail::get_label(v, "target"));
  return DiscreteDistribution(std::move(pts), probs, std::move(target));
}

inline json to_json(const TrainingSequence& s) {
  json ex = json::array();
  for (const auto& e : s) ex.push_back({{"point", to_json(e.point)}, {"label", e.label}});
  return {{"examples", std::move(ex)}};
}

inline TrainingSequence training_sequence_from_json(const json& j) {
  std::vector<LabeledExample> ex;
  for (const auto& e : detail::field(j, "examples"))
    ex.push_back({point_from_json(detail::field(e, "point")), detail::get_label(detail::field(e, "label"), "label")});
  require(!ex.empty(), "training sequence must be non-empty");
  return TrainingSequence(std::move(ex));
}

// ---------------------------------------------------------------------------
// Voting and boosting

inline json to_json(const VotingClassifier& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back({{"weight", t.weight}, {"hypothesis", to_json(t.hypothesis)}});
  return {{"terms", std::move(terms)}};
}

inline VotingClassifier voting_from_json(const json& j) {
  std::vector<VoteTerm> terms;
  for (const auto& t : detail::field(j, "terms"))
    terms.push_back({detail::get<double>(t, "weight"), hypothesis_from_json(detail::field(t, "hypothesis"))});
  return VotingClassifier(std::move(terms));
}

inline json to_json(const MajorityEnsemble& e) {
  json members = json::array();
  for (const auto& f : e.members()) members.push_back(to_json(f));
  return {{"protocol", e.protocol()}, {"members", std::move(members)}};
}

inline MajorityEnsemble ensemble_from_json(const json& j) {
  std::vector<VotingClassifier> members;
  for (const auto& f : detail::field(j, "members")) members.push_back(voting_from_json(f));
  return MajorityEnsemble(std::move(members), detail::get_or<std::string>(j, "protocol", ""));
}

inline json to_json(const RoundLog& r) {
  return {{"round", r.round},   {"hypothesis_index", r.hypothesis_index}, {"epsilon", r.epsilon},
          {"alpha", r.alpha},   {"normalizer", r.normalizer},             {"min_margin", r.min_margin}};
}

inline json to_json(const std::vector<RoundLog>& logs) {
  json out = json::array();
  for (const auto& r : logs) out.push_back(to_json(r));
  return out;
}

inline json to_json(const BoostResult& r) {
  return {{"classifier", to_json(r.classifier)},
          {"achieved_min_margin", r.achieved_min_margin},
          {"stop_reason", to_string(r.stop_reason)},
          {"rounds", r.logs.size()},
          {"normalizer_product", r.normalizer_product},
          {"logs", to_json(r.logs)}};
}

inline std::string rounds_csv(const std::vector<RoundLog>& logs) {
  std::string out = "t,epsilon,alpha,min_margin\n";
  for (const auto& r : logs)
    out += std::to_string(r.round) + "," + format_double(r.epsilon) + "," + format_double(r.alpha) + "," +
           format_double(r.min_margin) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Experiments

inline experiments::GeneratorConfig generator_from_json(const json& j) {
  experiments::GeneratorConfig c;
  c.n_points = detail::get_or<std::size_t>(j, "n_points", c.n_points);
  c.n_features = detail::get_or<std::size_t>(j, "n_features", c.n_features);
  c.k_terms = detail::get_or<std::size_t>(j, "k_terms", c.k_terms);
  c.theta = detail::get_or<double>(j, "theta", c.theta);
  c.seed = detail::get_or<std::uint64_t>(j, "seed", c.seed);
  c.n_levels = detail::get_or<std::size_t>(j, "n_levels", c.n_levels);
  c.probe_reweightings = detail::get_or<std::size_t>(j, "probe_reweightings", c.probe_reweightings);
  c.validate();
  return c;
}

inline json to_json(const experiments::GeneratorConfig& c) {
  return {{"n_points", c.n_points}, {"n_features", c.n_features}, {"k_terms", c.k_terms},
          {"theta", c.theta},       {"seed", c.seed},             {"n_levels", c.n_levels},
          {"probe_reweightings", c.probe_reweightings}};
}

inline experiments::ScalingConfig scaling_config_from_json(const json& j) {
  experiments::ScalingConfig c;
  c.generator = generator_from_json(detail::field(j, "generator"));
  c.m_grid = detail::get<std::vector<std::size_t>>(j, "m_grid");
  c.trials = detail::get_or<std::size_t>(j, "trials", c.trials);
  c.gamma = detail::get_or<double>(j, "gamma", c.gamma);
  c.learner = experiments::parse_learner(detail::get_or<std::string>(j, "learner", "maj3"));
  c.seed = detail::get_or<std::uint64_t>(j, "seed", c.seed);
  c.delta = detail::get_or<double>(j, "delta", c.delta);
  c.validate();
  return c;
}

inline std::string scaling_csv(const experiments::ScalingReport& rep) {
  std::string out = "m,mean_error,std_error,trials,optimal_rate,adaboost_bound\n";
  for (const auto& r : rep.rows)
    out += std::to_string(r.m) + "," + format_double(r.mean_error) + "," + format_double(r.std_error) + "," +
           std::to_string(r.trials) + "," + format_double(r.optimal_rate) + "," + format_double(r.adaboost_bound) +
           "\n";
  return out;
}

inline std::string trials_csv(const experiments::ScalingReport& rep) {
  std::string out = "learner,m,seed,error,rounds,min_margin,witness,failed\n";
  for (const auto& r : rep.records)
    out += std::string(experiments::to_string(r.learner)) + "," + std::to_string(r.m) + "," + std::to_string(r.seed) +
           "," + format_double(r.error) + "," + std::to_string(r.rounds) + "," + format_double(r.min_margin) + "," +
           format_double(r.witness) + "," + (r.failed ? "1" : "0") + "\n";
  return out;
}

inline json to_json(const experiments::SlopeFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"slope_se", f.slope_se},
          {"points", f.points},
          {"floor_reached", f.floor_reached}};
}

inline json scaling_summary(const experiments::ScalingReport& rep) {
  json rows = json::array();
  std::size_t failed = 0;
  for (const auto& r : rep.rows) {
    failed += r.failed;
    rows.push_back({{"m", r.m},
                    {"mean_error", r.mean_error},
                    {"std_error", r.std_error},
                    {"trials", r.trials},
                    {"failed", r.failed},
                    {"mean_rounds", r.mean_rounds},
                    {"min_margin", r.min_margin},
                    {"optimal_rate", r.optimal_rate},
                    {"adaboost_bound", r.adaboost_bound}});
  }
  return {{"learner", experiments::to_string(rep.learner)},
          {"gamma", rep.gamma},
          {"d", rep.d},
          {"fit", to_json(rep.fit)},
          {"failed_trials", failed},
          {"nearly_non_increasing", experiments::nearly_non_increasing(rep.rows)},
          {"rows", std::move(rows)}};
}

/// Log-log line chart of mean error against m with the two reference curves.
inline std::string scaling_svg(const experiments::ScalingReport& rep) {
  const double w = 640, h = 420, left = 70, right = 170, top = 30, bottom = 50;
  struct Series {
    const char* name;
    const char* colour;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series = {{"mean error", "#1f77b4", {}}, {"optimal rate", "#2ca02c", {}},
                                {"adaboost bound", "#d62728", {}}};
  for (const auto& r : rep.rows) {
    const double x = std::log10(static_cast<double>(r.m));
    if (r.mean_error > 0) series[0].pts.emplace_back(x, std::log10(r.mean_error));
    if (r.optimal_rate > 0) series[1].pts.emplace_back(x, std::log10(r.optimal_rate));
    if (r.adaboost_bound > 0) series[2].pts.emplace_back(x, std::log10(r.adaboost_bound));
  }
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (const auto& [x, y] : s.pts) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  y0 = std::floor(y0);
  y1 = std::ceil(y1);
  if (x1 - x0 < 1e-9) x1 = x0 + 1;
  if (y1 - y0 < 1e-9) y1 = y0 + 1;
  const auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (w - left - right); };
  const auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * (h - top - bottom); };
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" viewBox=\"0 0 " +
         num(w) + " " + num(h) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<g stroke=\"#444\" fill=\"none\">\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(h - bottom) + "\" x2=\"" + num(w - right) + "\" y2=\"" +
         num(h - bottom) + "\"/>\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(h - bottom) +
         "\"/>\n</g>\n";
  out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  for (const auto& r : rep.rows) {
    const double x = px(std::log10(static_cast<double>(r.m)));
    out += "<text x=\"" + num(x) + "\" y=\"" + num(h - bottom + 16) + "\" text-anchor=\"middle\">" +
           std::to_string(r.m) + "</text>\n";
  }
  for (double e = y0; e <= y1 + 1e-9; e += 1.0)
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(e) + 4) + "\" text-anchor=\"end\">1e" +
           std::to_string(static_cast<int>(e)) + "</text>\n";
  out += "<text x=\"" + num((left + w - right) / 2) + "\" y=\"" + num(h - 12) + "\" text-anchor=\"middle\">m</text>\n";
  out += "<text x=\"16\" y=\"" + num((top + h - bottom) / 2) + "\" transform=\"rotate(-90 16 " +
         num((top + h - bottom) / 2) + ")\" text-anchor=\"middle\">error</text>\n</g>\n";
  double ly = top + 10;
  for (const auto& s : series) {
    if (s.pts.size() >= 2) {
      out += "<polyline fill=\"none\" stroke=\"" + std::string(s.colour) + "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < s.pts.size(); ++i)
        out += (i ? " " : "") + num(px(s.pts[i].first)) + "," + num(py(s.pts[i].second));
      out += "\"/>\n";
    }
    for (const auto& [x, y] : s.pts)
      out += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3\" fill=\"" + s.colour + "\"/>\n";
    out += "<line x1=\"" + num(w - right + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(w - right + 32) + "\" y2=\"" +
           num(ly) + "\" stroke=\"" + s.colour + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + num(w - right + 38) + "\" y=\"" + num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + s.name + "</text>\n";
    ly += 18;
  }
  out += "</svg>\n";
  return out;
}

inline experiments::ProbeConfig probe_config_from_json(const json& j) {
  experiments::ProbeConfig c;
  for (const auto& h : detail::field(j, "hypotheses")) c.hypotheses.push_back(detail::as<std::vector<int>>(h, "hypotheses"));
  c.probs = detail::get<std::vector<double>>(j, "probs");
  c.target = detail::get<std::vector<int>>(j, "target");
  c.m = detail::get_or<std::size_t>(j, "m", c.m);
  c.gamma0 = detail::get_or<double>(j, "gamma0", c.gamma0);
  c.gamma1 = detail::get_or<double>(j, "gamma1", c.gamma1);
  c.tau0 = detail::get_or<double>(j, "tau0", c.tau0);
  c.tau1 = detail::get_or<double>(j, "tau1", c.tau1);
  c.delta = detail::get_or<double>(j, "delta", c.delta);
  c.q = detail::get_or<int>(j, "q", c.q);
  c.trials = detail::get_or<std::size_t>(j, "trials", c.trials);
  c.seed = detail::get_or<std::uint64_t>(j, "seed", c.seed);
  c.slack_constant = detail::get_or<double>(j, "slack_constant", c.slack_constant);
  c.validate();
  return c;
}

inline json to_json(const experiments::ProbeResult& r) {
  return {{"trials", r.trials},
          {"violations", r.violations},
          {"frequency", r.frequency},
          {"wilson95_lower", r.wilson95.lower},
          {"wilson95_upper", r.wilson95.upper},
          {"threshold", r.threshold},
          {"hull_size", r.hull_size},
          {"cover_size", r.cover_size},
          {"cover_exact", r.cover_exact},
          {"bound", r.bound},
          {"consistent", r.consistent}};
}

// ---------------------------------------------------------------------------
// Bounds

namespace detail {

template <class T>
std::vector<T> scalar_or_list(const json& j, const char* key, std::vector<T> fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  const json& v = j.at(key);
  std::vector<T> out = v.is_array() ? as<std::vector<T>>(v, key) : std::vector<T>{as<T>(v, key)};
  require(!out.empty(), std::string("grid axis '") + key + "' is empty");
  return out;
}

}  // namespace detail

/// Cartesian product of the grid axes d, m, gamma, delta, tau, N and C; each
/// axis is a number or a list. m varies fastest.
inline std::vector<bounds::BoundInputs> bound_grid_from_json(const json& j) {
  require(j.is_object(), "bounds grid must be a JSON object");
  const auto ds = detail::scalar_or_list<long long>(j, "d", {});
  const auto ms = detail::scalar_or_list<long long>(j, "m", {});
  require(!ds.empty() && !ms.empty(), "bounds grid needs d and m");
  const auto gs = detail::scalar_or_list<double>(j, "gamma", {0.1});
  const auto deltas = detail::scalar_or_list<double>(j, "delta", {0.05});
  const auto taus = detail::scalar_or_list<double>(j, "tau", {0.0});
  const auto ns = detail::scalar_or_list<long long>(j, "N", {});
  const auto cs = detail::scalar_or_list<double>(j, "C", {1.0});
  std::vector<std::optional<long long>> n_axis;
  if (ns.empty()) n_axis.push_back(std::nullopt);
  for (long long n : ns) n_axis.push_back(n);

  std::vector<bounds::BoundInputs> cells;
  for (long long d : ds)
    for (double g : gs)
      for (double delta : deltas)
        for (double tau : taus)
          for (const auto& n : n_axis)
            for (double c : cs)
              for (long long m : ms) {
                bounds::BoundInputs in{d, m, g, delta, tau, n, c};
                in.validate();
                cells.push_back(in);
              }
  return cells;
}

inline std::string bounds_csv(const std::vector<bounds::BoundInputs>& cells) {
  std::string out = "bound_name,d,m,gamma,delta,tau,N,C,value,precondition_ok\n";
  for (const auto& in : cells)
    for (const auto& row : bounds::evaluate_all(in))
      out += row.name + "," + std::to_string(in.d) + "," + std::to_string(in.m) + "," + format_double(in.gamma) + "," +
             format_double(in.delta) + "," + format_double(in.tau) + "," +
             (in.class_size ? std::to_string(*in.class_size) : std::string()) + "," + format_double(in.C) + "," +
             format_double(row.value) + "," + (row.precondition_ok ? "true" : "false") + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Oracle tables

inline oracle::FunctionTable table_from_json(const json& j) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : detail::field(j, "rows")) rows.push_back(detail::as<std::vector<double>>(r, "rows"));
  return oracle::FunctionTable::from_rows(rows);
}

inline json to_json(const oracle::FunctionTable& t) {
  json rows = json::array();
  for (std::size_t r = 0; r < t.rows(); ++r) rows.push_back(t.row(r));
  return {{"rows", std::move(rows)}};
}

}  // namespace boostmargin::io
