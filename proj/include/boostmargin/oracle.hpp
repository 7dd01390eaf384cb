#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "boostmargin/domain.hpp"
#include "boostmargin/errors.hpp"

// Brute-force ground truth on tiny instances: VC dimension, fat-shattering
// dimension and l-infinity covering numbers of a function class restricted
// to a finite point set.

namespace boostmargin::oracle {

/// Values of a finite function class on a fixed point set; rows are
/// functions, columns are points.
class FunctionTable {
 public:
  FunctionTable() = default;

  FunctionTable(std::size_t rows, std::size_t cols, std::vector<double> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    require(values_.size() == rows_ * cols_, "function table size mismatch");
    for (double v : values_) require(std::isfinite(v) && std::abs(v) <= 1.0, "table values must lie in [-1, 1]");
  }

  static FunctionTable from_rows(const std::vector<std::vector<double>>& rows) {
    require(!rows.empty(), "function table needs at least one row");
    const std::size_t cols = rows.front().size();
    std::vector<double> v;
    v.reserve(rows.size() * cols);
    for (const auto& r : rows) {
      require(r.size() == cols, "function table rows must share length");
      v.insert(v.end(), r.begin(), r.end());
    }
    return FunctionTable(rows.size(), cols, std::move(v));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  const std::vector<double>& values() const { return values_; }

  std::vector<double> row(std::size_t r) const {
    return {values_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            values_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  double max_gap(std::size_t a, std::size_t b) const {
    double g = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) g = std::max(g, std::abs((*this)(a, c) - (*this)(b, c)));
    return g;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Value comparisons treat differences below this as zero; table entries are
/// short rationals that are not always exact in binary.
inline constexpr double kValueTolerance = 1e-12;

/// +-1 table of H on the given points.
inline FunctionTable restrict_class(const HypothesisClass& hc, const std::vector<Point>& points) {
  require(!points.empty(), "restriction needs at least one point");
  std::vector<double> v;
  v.reserve(hc.size() * points.size());
  for (const auto& h : hc)
    for (const auto& x : points) v.push_back(h(x));
  return FunctionTable(hc.size(), points.size(), std::move(v));
}

/// All convex combinations with weights in {0, 1/q, ..., 1} of the rows of a
/// +-1 table, deduplicated by value vector and sorted lexicographically.
inline FunctionTable grid_convex_hull(const FunctionTable& base, int q) {
  require(base.rows() >= 1 && base.rows() <= 8, "grid hull supports 1 to 8 hypotheses");
  require(q >= 1 && q <= 12, "grid resolution q must lie in [1, 12]");
  for (double v : base.values()) require(v == 1.0 || v == -1.0, "grid hull needs a +-1 table");
  const std::size_t r = base.rows();
  const std::size_t n = base.cols();
  std::set<std::vector<int>> seen;
  std::vector<int> counts(r, 0);
  // enumerate compositions of q into r non-negative parts
  auto rec = [&](auto&& self, std::size_t j, int left) -> void {
    if (j + 1 == r) {
      counts[j] = left;
      std::vector<int> sum(n, 0);
      for (std::size_t a = 0; a < r; ++a)
        if (counts[a])
          for (std::size_t c = 0; c < n; ++c) sum[c] += counts[a] * static_cast<int>(base(a, c));
      seen.insert(std::move(sum));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      counts[j] = k;
      self(self, j + 1, left - k);
    }
  };
  rec(rec, 0, q);
  std::vector<double> v;
  v.reserve(seen.size() * n);
  for (const auto& s : seen)
    for (int x : s) v.push_back(static_cast<double>(x) / q);
  return FunctionTable(seen.size(), n, std::move(v));
}

inline FunctionTable clip_table(const FunctionTable& t, double gamma) {
  require(gamma > 0.0, "clipping level must be positive");
  std::vector<double> v = t.values();
  for (double& x : v) x = std::clamp(x, -gamma, gamma);
  return FunctionTable(t.rows(), t.cols(), std::move(v));
}

struct CoverResult {
  std::size_t size = 0;
  std::vector<std::size_t> centers;
  bool exact = false;
};

namespace detail {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  bool any() const {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x != 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  std::size_t count_and(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) c += static_cast<std::size_t>(std::popcount(w_[k] & o.w_[k]));
    return c;
  }
  void clear_all(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
  }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> w_;
};

struct CoverSearch {
  std::vector<Bits> balls;
  std::size_t n = 0;
  std::vector<std::size_t> best;
  std::vector<std::size_t> chosen;
  std::uint64_t nodes = 0;
  std::uint64_t node_limit = 0;
  bool aborted = false;

  void run(const Bits& uncovered) {
    if (aborted) return;
    if (++nodes > node_limit) {
      aborted = true;
      return;
    }
    const std::size_t left = uncovered.count();
    if (left == 0) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    std::size_t widest = 0;
    std::size_t pivot = n;
    std::size_t pivot_options = n + 1;
    for (std::size_t j = 0; j < n; ++j) {
      widest = std::max(widest, balls[j].count_and(uncovered));
      if (uncovered.test(j)) {
        const std::size_t opts = balls[j].count();
        if (opts < pivot_options) {
          pivot_options = opts;
          pivot = j;
        }
      }
    }
    const std::size_t lower = chosen.size() + (left + widest - 1) / widest;
    if (lower >= best.size()) return;
    // the pivot row must be covered by some center inside its own ball
    std::vector<std::pair<std::size_t, std::size_t>> options;
    for (std::size_t j = 0; j < n; ++j)
      if (balls[pivot].test(j)) options.emplace_back(balls[j].count_and(uncovered), j);
    std::sort(options.begin(), options.end(), [](auto a, auto b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (const auto& [gain, j] : options) {
      Bits next = uncovered;
      next.clear_all(balls[j]);
      chosen.push_back(j);
      run(next);
      chosen.pop_back();
      if (aborted) return;
    }
  }
};

inline std::vector<Bits> cover_balls(const FunctionTable& t, double alpha) {
  const std::size_t n = t.rows();
  std::vector<Bits> balls(n, Bits(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (t.max_gap(a, b) <= alpha + kValueTolerance) balls[a].set(b);
  return balls;
}

inline std::vector<std::size_t> greedy_cover(const std::vector<Bits>& balls, std::size_t n) {
  Bits uncovered(n);
  for (std::size_t i = 0; i < n; ++i) uncovered.set(i);
  std::vector<std::size_t> centers;
  while (uncovered.any()) {
    std::size_t best = 0, gain = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t g = balls[j].count_and(uncovered);
      if (g > gain) {
        gain = g;
        best = j;
      }
    }
    centers.push_back(best);
    uncovered.clear_all(balls[best]);
  }
  return centers;
}

}  // namespace detail

inline constexpr std::size_t kExactCoverRows = 200;

/// Minimum internal alpha-cover in the sup norm (centers are rows of T).
///
/// Up to kExactCoverRows rows: exhaustive branch-and-bound set cover seeded
/// with the greedy solution, exact = true unless the node budget runs out.
/// Larger tables get the greedy cover with exact = false.
inline CoverResult covering_number_exact(const FunctionTable& t, double alpha,
                                         std::uint64_t node_limit = 50'000'000) {
  require(alpha >= 0.0, "cover radius must be non-negative");
  const std::size_t n = t.rows();
  if (n == 0) return {0, {}, true};
  const auto balls = detail::cover_balls(t, alpha);
  std::vector<std::size_t> greedy = detail::greedy_cover(balls, n);
  if (n > kExactCoverRows) return {greedy.size(), greedy, false};
  detail::CoverSearch search;
  search.balls = balls;
  search.n = n;
  search.best = greedy;
  search.node_limit = node_limit;
  detail::Bits all(n);
  for (std::size_t i = 0; i < n; ++i) all.set(i);
  search.run(all);
  std::vector<std::size_t> centers = search.best;
  std::sort(centers.begin(), centers.end());
  return {centers.size(), centers, !search.aborted};
}

/// True if every row lies within alpha of some center.
inline bool is_cover(const FunctionTable& t, const std::vector<std::size_t>& centers, double alpha) {
  for (std::size_t r = 0; r < t.rows(); ++r) {
    bool hit = false;
    for (std::size_t c : centers)
      if (t.max_gap(r, c) <= alpha + kValueTolerance) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

/// Multiples of beta/2 inside [-1 + beta, 1 - beta].
inline std::vector<double> default_level_grid(double beta) {
  require(beta > 0.0, "beta must be positive");
  std::vector<double> grid;
  const double step = beta / 2.0;
  const double reach = 1.0 - beta + kValueTolerance;
  const auto kmax = static_cast<long long>(std::floor(reach / step));
  for (long long k = -kmax; k <= kmax; ++k) grid.push_back(static_cast<double>(k) * step);
  return grid;
}

struct FatResult {
  std::size_t dimension = 0;
  std::vector<std::size_t> columns;  // witness point set
  std::vector<double> levels;        // witness levels r_i
};

namespace detail {

// Row classification against level r at gap beta: +1 above, -1 below, 0 neither.
inline std::vector<int> classify_column(const FunctionTable& t, std::size_t col, double r, double beta) {
  std::vector<int> out(t.rows(), 0);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const double v = t(i, col);
    if (v >= r + beta - kValueTolerance)
      out[i] = 1;
    else if (v <= r - beta + kValueTolerance)
      out[i] = -1;
  }
  return out;
}

struct FatSearch {
  const FunctionTable* t = nullptr;
  double beta = 0.0;
  std::vector<double> grid;
  // per column: distinct classification vectors with a representative level
  std::vector<std::vector<std::pair<std::vector<int>, double>>> options;

  void prepare() {
    options.assign(t->cols(), {});
    for (std::size_t c = 0; c < t->cols(); ++c) {
      std::set<std::vector<int>> seen;
      for (double r : grid) {
        auto cls = classify_column(*t, c, r, beta);
        bool above = false, below = false;
        for (int v : cls) {
          above |= v == 1;
          below |= v == -1;
        }
        if (!above || !below) continue;
        if (seen.insert(cls).second) options[c].emplace_back(std::move(cls), r);
      }
    }
  }

  // patterns[i] = pattern bits of row i so far, or -1 if undefined.
  bool extend(const std::vector<std::size_t>& cols, std::size_t depth, const std::vector<long long>& patterns,
              std::vector<double>& levels) const {
    if (depth == cols.size()) return true;
    const std::size_t need = std::size_t{1} << (depth + 1);
    std::vector<long long> next(patterns.size());
    std::vector<char> seen(need);
    for (const auto& [cls, r] : options[cols[depth]]) {
      std::fill(seen.begin(), seen.end(), 0);
      std::size_t hit = 0;
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (patterns[i] < 0 || cls[i] == 0) {
          next[i] = -1;
          continue;
        }
        next[i] = patterns[i] | (cls[i] > 0 ? (1LL << depth) : 0);
        if (!seen[static_cast<std::size_t>(next[i])]) {
          seen[static_cast<std::size_t>(next[i])] = 1;
          ++hit;
        }
      }
      if (hit < need) continue;
      levels[depth] = r;
      if (extend(cols, depth + 1, next, levels)) return true;
    }
    return false;
  }

  bool shatters(const std::vector<std::size_t>& cols, std::vector<double>& levels) const {
    levels.assign(cols.size(), 0.0);
    std::vector<long long> start(t->rows(), 0);
    return extend(cols, 0, start, levels);
  }
};

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order
// until fn returns true.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (fn(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

inline constexpr std::size_t kMaxFatColumns = 12;

/// Largest n such that some n columns are beta-shattered with witness levels
/// drawn from level_grid. Exact for the grid-restricted quantity; a lower
/// bound on the unrestricted fat-shattering dimension.
inline FatResult fat_shattering_exact(const FunctionTable& t, double beta, std::vector<double> level_grid = {}) {
  require(beta > 0.0, "beta must be positive");
  require(t.cols() <= kMaxFatColumns, "fat-shattering search supports at most 12 points");
  if (level_grid.empty()) level_grid = default_level_grid(beta);
  detail::FatSearch search;
  search.t = &t;
  search.beta = beta;
  search.grid = std::move(level_grid);
  search.prepare();
  FatResult result;
  for (std::size_t k = 1; k <= t.cols(); ++k) {
    if ((std::size_t{1} << k) > t.rows()) break;
    std::vector<double> levels;
    std::vector<std::size_t> witness;
    const bool found = detail::for_each_subset(t.cols(), k, [&](const std::vector<std::size_t>& cols) {
      if (search.shatters(cols, levels)) {
        witness = cols;
        return true;
      }
      return false;
    });
    if (!found) break;
    result = {k, witness, levels};
  }
  return result;
}

struct VcResult {
  std::size_t dimension = 0;
  std::vector<std::size_t> witness;  // shattered column indices
};

inline constexpr std::size_t kMaxVcPoints = 16;
inline constexpr std::size_t kMaxVcPatterns = 10'000;

/// Largest n such that some n columns of a +-1 table see all 2^n patterns.
/// The size guard applies to distinct row patterns.
inline VcResult vc_dimension_exact(const FunctionTable& t) {
  require(t.cols() <= kMaxVcPoints, "VC search supports at most 16 points");
  std::vector<std::uint32_t> patterns;
  patterns.reserve(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r) {
    std::uint32_t p = 0;
    for (std::size_t c = 0; c < t.cols(); ++c) {
      const double v = t(r, c);
      require(v == 1.0 || v == -1.0, "VC search needs a +-1 table");
      if (v > 0) p |= 1U << c;
    }
    patterns.push_back(p);
  }
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  require(patterns.size() <= kMaxVcPatterns, "VC search supports at most 10^4 distinct hypotheses");
  VcResult result;
  std::vector<char> seen;
  for (std::size_t k = 1; k <= t.cols(); ++k) {
    if ((std::size_t{1} << k) > patterns.size()) break;
    std::vector<std::size_t> witness;
    seen.assign(std::size_t{1} << k, 0);
    const bool found = detail::for_each_subset(t.cols(), k, [&](const std::vector<std::size_t>& cols) {
      std::fill(seen.begin(), seen.end(), 0);
      std::size_t hit = 0;
      for (std::uint32_t p : patterns) {
        std::size_t key = 0;
        for (std::size_t b = 0; b < k; ++b) key |= static_cast<std::size_t>((p >> cols[b]) & 1U) << b;
        if (!seen[key]) {
          seen[key] = 1;
          if (++hit == seen.size()) {
            witness = cols;
            return true;
          }
        }
      }
      return false;
    });
    if (!found) break;
    result = {k, witness};
  }
  return result;
}

inline VcResult vc_dimension_exact(const HypothesisClass& hc, const std::vector<Point>& points) {
  require(points.size() <= kMaxVcPoints, "VC search supports at most 16 points");
  return vc_dimension_exact(restrict_class(hc, points));
}

}  // namespace boostmargin::oracle
