#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "boostmargin/errors.hpp"

// Closed-form margin generalization bounds and combinatorial-dimension bounds.
//
// Hidden universal constants collapse to the multiplicative knob C (the
// covering bound keeps its own pair c, c'). Every logarithm of a size
// parameter goes through trunc_ln so the formulas stay positive and monotone
// at small m; ln(1/delta) and ln(e/delta) are exact since delta < 1 keeps them
// non-negative.

namespace boostmargin::bounds {

/// Ln(x) = ln(max(x, e)).
inline double trunc_ln(double x) { return std::log(std::fmax(x, std::numbers::e)); }

/// Ln(x) * Ln(Ln(x))^2.
inline double phi(double x) {
  const double l = trunc_ln(x);
  const double ll = trunc_ln(l);
  return ll * ll * l;
}

struct BoundInputs {
  long long d = 1;                       // VC dimension
  long long m = 1;                       // sample size
  double gamma = 0.1;                    // margin, (0, 1]
  double delta = 0.05;                   // failure probability, (0, 1)
  double tau = 0.0;                      // empirical margin loss, [0, 1]
  std::optional<long long> class_size;   // N = |H| for finite-class bounds
  double C = 1.0;                        // universal-constant knob

  void validate() const {
    require(d >= 1, "d must be a positive integer");
    require(m >= 1, "m must be a positive integer");
    require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
    require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    require(tau >= 0.0 && tau <= 1.0, "tau must lie in [0, 1]");
    require(C > 0.0, "C must be positive");
    if (class_size) require(*class_size >= 1, "N must be a positive integer");
  }

  long long require_class_size() const {
    require(class_size.has_value(), "finite-class bound needs N = |H|");
    return *class_size;
  }
};

namespace detail {

inline double gm2(const BoundInputs& in) {
  return in.gamma * in.gamma * static_cast<double>(in.m);
}

inline double ln_inv_delta(const BoundInputs& in) { return -std::log(in.delta); }

// ln(N) ln(m) / (gamma^2 m)
inline double finite_class_term(const BoundInputs& in) {
  return trunc_ln(static_cast<double>(in.require_class_size())) * trunc_ln(static_cast<double>(in.m)) / gm2(in);
}

// tau ln(1/tau) with the 0 * inf limit taken as 0.
inline double tau_log_inv_tau(double tau) { return tau > 0.0 ? tau * trunc_ln(1.0 / tau) : 0.0; }

}  // namespace detail

/// d phi(m gamma^2 / d) / (m gamma^2) + ln(e/delta) / m.
inline double new_margin_complexity(const BoundInputs& in) {
  in.validate();
  const double md = static_cast<double>(in.m);
  return static_cast<double>(in.d) * phi(detail::gm2(in) / static_cast<double>(in.d)) / detail::gm2(in) +
         std::log(std::numbers::e / in.delta) / md;
}

/// tau + sqrt(C tau B) + C B with B = new_margin_complexity.
inline double new_margin_bound(const BoundInputs& in) {
  const double b = new_margin_complexity(in);
  return in.tau + std::sqrt(in.C * in.tau * b) + in.C * b;
}

/// k'th margin bound for VC classes:
/// tau + C (sqrt(tau X) + X), X = d Ln(m/d) Ln(m) / (gamma^2 m) + ln(1/delta)/m.
inline double kth_margin_bound_vc(const BoundInputs& in) {
  in.validate();
  const double md = static_cast<double>(in.m);
  const double x = static_cast<double>(in.d) * trunc_ln(md / static_cast<double>(in.d)) * trunc_ln(md) /
                       detail::gm2(in) +
                   detail::ln_inv_delta(in) / md;
  return in.tau + in.C * (std::sqrt(in.tau * x) + x);
}

/// tau + C sqrt(Ln(N) Ln(m) / (gamma^2 m) + ln(1/delta)/m).
inline double simplegen_bound(const BoundInputs& in) {
  in.validate();
  const double md = static_cast<double>(in.m);
  return in.tau + in.C * std::sqrt(detail::finite_class_term(in) + detail::ln_inv_delta(in) / md);
}

/// C (Ln(N) Ln(m) / (gamma^2 m) + ln(1/delta)/m); stated for tau = 0.
inline double breiman_bound(const BoundInputs& in) {
  in.validate();
  const double md = static_cast<double>(in.m);
  return in.C * (detail::finite_class_term(in) + detail::ln_inv_delta(in) / md);
}

/// tau + C (sqrt(tau Ln(N) Ln(m) / (gamma^2 m)) + Ln(N) Ln(m) / (gamma^2 m)).
inline double refined_bound(const BoundInputs& in) {
  in.validate();
  const double a = detail::finite_class_term(in);
  return in.tau + in.C * (std::sqrt(in.tau * a) + a);
}

/// tau + C (sqrt(tau Ln(N) Ln(1/tau) / (gamma^2 m)) + Ln(N) Ln(m) / (gamma^2 m)).
inline double lower_bound_formula(const BoundInputs& in) {
  in.validate();
  const double ln_n = trunc_ln(static_cast<double>(in.require_class_size()));
  const double a = detail::finite_class_term(in);
  return in.tau + in.C * (std::sqrt(detail::tau_log_inv_tau(in.tau) * ln_n / detail::gm2(in)) + a);
}

/// C (d phi(gamma^2 m / d) / (gamma^2 m) + ln(1/delta)/m).
inline double adaboost_bound(const BoundInputs& in) {
  in.validate();
  const double md = static_cast<double>(in.m);
  return in.C * (static_cast<double>(in.d) * phi(detail::gm2(in) / static_cast<double>(in.d)) / detail::gm2(in) +
                 detail::ln_inv_delta(in) / md);
}

/// C (d / (gamma^2 m) + ln(1/delta)/m).
inline double optimal_rate(const BoundInputs& in) {
  in.validate();
  const double md = static_cast<double>(in.m);
  return in.C * (static_cast<double>(in.d) / detail::gm2(in) + detail::ln_inv_delta(in) / md);
}

struct CoveringBound {
  double value = 0.0;
  bool precondition_ok = false;
};

/// Right-hand side (c' d / (alpha^2 gamma^2)) phi(8 alpha m gamma^2 / (c d))
/// of the log-covering-number bound for the clipped hull, together with
/// whether gamma^2 >= 4 c d Ln^2(Ln(8 alpha m gamma^2/(c d))) / (alpha^2 m)
/// held. The value is computed either way.
inline CoveringBound covering_bound(long long d, long long m, double gamma, double alpha, double c = 1.0,
                                    double c_prime = 1.0) {
  require(d >= 1, "d must be a positive integer");
  require(m >= 1, "m must be a positive integer");
  require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
  require(alpha > 0.0 && alpha < 0.5, "alpha must lie in (0, 1/2)");
  require(c > 0.0 && c_prime > 0.0, "covering constants must be positive");
  const double dd = static_cast<double>(d);
  const double md = static_cast<double>(m);
  const double arg = 8.0 * alpha * md * gamma * gamma / (c * dd);
  const double lnln = trunc_ln(trunc_ln(arg));
  CoveringBound out;
  out.value = c_prime * dd / (alpha * alpha * gamma * gamma) * phi(arg);
  out.precondition_ok = gamma * gamma >= 4.0 * c * dd * lnln * lnln / (alpha * alpha * md);
  return out;
}

/// C d / beta^2.
inline double fat_bound(long long d, double beta, double C = 1.0) {
  require(d >= 0, "d must be non-negative");
  require(beta > 0.0, "beta must be positive");
  require(C > 0.0, "C must be positive");
  return C * static_cast<double>(d) / (beta * beta);
}

struct BoundReportRow {
  std::string name;
  double value = 0.0;
  BoundInputs inputs;
  bool precondition_ok = true;
};

/// Every generalization bound that applies to the inputs; finite-class
/// bounds only when N is given. The lower-bound formula is flagged outside
/// its regime 1/m < tau.
inline std::vector<BoundReportRow> evaluate_all(const BoundInputs& in) {
  in.validate();
  std::vector<BoundReportRow> rows;
  rows.push_back({"new_margin", new_margin_bound(in), in, true});
  rows.push_back({"kth_margin_vc", kth_margin_bound_vc(in), in, true});
  rows.push_back({"adaboost", adaboost_bound(in), in, true});
  rows.push_back({"optimal_rate", optimal_rate(in), in, true});
  if (in.class_size) {
    rows.push_back({"simplegen", simplegen_bound(in), in, true});
    rows.push_back({"breiman", breiman_bound(in), in, true});
    rows.push_back({"refined", refined_bound(in), in, true});
    rows.push_back({"lower", lower_bound_formula(in), in, in.tau > 1.0 / static_cast<double>(in.m)});
  }
  return rows;
}

}  // namespace boostmargin::bounds
