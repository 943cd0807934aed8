#include "og/dimensions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "og/online.hpp"  // kEpsilonSlack
#include "og/rng.hpp"

namespace og {

namespace {

// Comparisons against theta carry a hair of slack so values that are equal
// in exact arithmetic do not flap across the threshold.
bool ge_margin(double v, double theta, double eps) {
  return v >= theta + eps - kEpsilonSlack;
}
bool le_theta(double v, double theta) { return v <= theta + kEpsilonSlack; }

}  // namespace

void RealMatrix::validate_unit_range() const {
  if (rows < 0 || cols < 0 ||
      entries.size() != std::size_t(rows) * std::size_t(cols))
    throw input_error("matrix shape/storage mismatch");
  for (double v : entries)
    if (!(v >= 0.0 && v <= 1.0))
      throw input_error("matrix entry outside [0,1]");
}

RealMatrix to_matrix(const FiniteConceptClass& cls) {
  RealMatrix m = RealMatrix::zeros(cls.size(), cls.domain_size());
  for (int i = 0; i < cls.size(); ++i)
    for (int j = 0; j < cls.domain_size(); ++j) m.at(i, j) = cls.at(i, j);
  return m;
}

FiniteConceptClass binary_class_from_matrix(const RealMatrix& m) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows));
  for (int i = 0; i < m.rows; ++i) {
    rows[std::size_t(i)].resize(std::size_t(m.cols));
    for (int j = 0; j < m.cols; ++j) rows[std::size_t(i)][std::size_t(j)] = m.at(i, j);
  }
  return FiniteConceptClass(m.cols, LabelKind::binary, std::move(rows));
}

// ---------------------------------------------------------------------------
// VC dimension: exhaustive search over column subsets, smallest size first.

namespace {

bool subset_shattered(const FiniteConceptClass& cls, std::span<const int> cols) {
  const std::size_t want = std::size_t(1) << cols.size();
  std::set<std::uint32_t> patterns;
  for (int h = 0; h < cls.size(); ++h) {
    std::uint32_t p = 0;
    for (std::size_t b = 0; b < cols.size(); ++b)
      if (cls.at(h, cols[b]) == 1.0) p |= (1u << b);
    patterns.insert(p);
    if (patterns.size() == want) return true;
  }
  return false;
}

// Visits size-d column combinations in lexicographic order.
template <typename F>
bool any_combination(int n, int d, F&& f) {
  std::vector<int> c(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) c[std::size_t(i)] = i;
  if (d == 0) return f(std::span<const int>{});
  while (true) {
    if (f(std::span<const int>(c))) return true;
    int i = d - 1;
    while (i >= 0 && c[std::size_t(i)] == n - d + i) --i;
    if (i < 0) return false;
    ++c[std::size_t(i)];
    for (int j = i + 1; j < d; ++j) c[std::size_t(j)] = c[std::size_t(j - 1)] + 1;
  }
}

}  // namespace

DimensionReport vc_dimension(const FiniteConceptClass& cls, const Caps& caps) {
  if (cls.label_kind() != LabelKind::binary)
    throw input_error("vc_dimension requires a binary class");
  if (cls.domain_size() > caps.vc_max_domain)
    throw cap_error("vc_dimension: domain size " +
                    std::to_string(cls.domain_size()) + " exceeds cap " +
                    std::to_string(caps.vc_max_domain));

  // 2^d distinct restrictions need 2^d distinct rows.
  int d_max = 0;
  while ((1 << (d_max + 1)) <= cls.size() && d_max + 1 <= cls.domain_size())
    ++d_max;

  DimensionReport report;
  for (int d = 1; d <= d_max; ++d) {
    std::vector<int> found;
    bool ok = any_combination(cls.domain_size(), d, [&](std::span<const int> c) {
      if (!subset_shattered(cls, c)) return false;
      found.assign(c.begin(), c.end());
      return true;
    });
    if (!ok) break;
    report.value = d;
    report.witness.cols = found;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Littlestone dimension: memoised mistake-tree recursion over row subsets.

namespace {

struct LitContext {
  const FiniteConceptClass& cls;
  std::map<std::vector<int>, int> memo;
  long budget;

  int lit(const std::vector<int>& rows) {
    if (rows.size() <= 1) return 0;
    auto it = memo.find(rows);
    if (it != memo.end()) return it->second;
    if (long(memo.size()) >= budget)
      throw cap_error("littlestone_dimension: restriction budget exhausted");

    const int upper = int(std::floor(std::log2(double(rows.size()))));
    int best = 0;
    for (int x = 0; x < cls.domain_size() && best < upper; ++x) {
      std::vector<int> ones, zeros;
      for (int r : rows)
        (cls.at(r, x) == 1.0 ? ones : zeros).push_back(r);
      if (ones.empty() || zeros.empty()) continue;
      best = std::max(best, 1 + std::min(lit(ones), lit(zeros)));
    }
    memo.emplace(rows, best);
    return best;
  }

  // Fills the heap-layout witness arrays for a depth-d tree below `node`.
  void build(const std::vector<int>& rows, int d, std::size_t node,
             std::size_t leaf_base, DimensionWitness& w) {
    if (d == 0) {
      w.tree_leaves[leaf_base] = rows.front();
      return;
    }
    for (int x = 0; x < cls.domain_size(); ++x) {
      std::vector<int> ones, zeros;
      for (int r : rows)
        (cls.at(r, x) == 1.0 ? ones : zeros).push_back(r);
      if (ones.empty() || zeros.empty()) continue;
      if (lit(ones) >= d - 1 && lit(zeros) >= d - 1) {
        w.tree_xs[node] = x;
        build(ones, d - 1, 2 * node + 1, leaf_base, w);
        build(zeros, d - 1, 2 * node + 2,
              leaf_base + (std::size_t(1) << (d - 1)), w);
        return;
      }
    }
  }
};

}  // namespace

DimensionReport littlestone_dimension(const FiniteConceptClass& cls,
                                      const Caps& caps) {
  if (cls.label_kind() != LabelKind::binary)
    throw input_error("littlestone_dimension requires a binary class");
  if (cls.size() > caps.littlestone_max_restrictions)
    throw cap_error("littlestone_dimension: class size exceeds cap");

  LitContext ctx{cls, {}, caps.littlestone_max_restrictions};
  std::vector<int> all(static_cast<std::size_t>(cls.size()));
  for (int i = 0; i < cls.size(); ++i) all[std::size_t(i)] = i;

  DimensionReport report;
  report.value = ctx.lit(all);
  const int d = report.value;
  report.witness.tree_xs.assign((std::size_t(1) << d) - 1, 0);
  report.witness.tree_leaves.assign(std::size_t(1) << d, 0);
  ctx.build(all, d, 0, 0, report.witness);
  return report;
}

// ---------------------------------------------------------------------------
// Threshold-pattern DFS, shared by the binary and fat variants. Predicates
// say whether entry (r, c) may sit in the upper (i <= j) or lower (i > j)
// part of the staircase.

namespace {

struct PatternSearch {
  int m, n;
  std::vector<char> hi;  // m*n, entry may be the "1"/">= theta+eps" part
  std::vector<char> lo;  // m*n, entry may be the "0"/"<= theta" part

  std::vector<int> rows, cols;
  std::vector<char> row_used, col_used;
  std::vector<int> best_rows, best_cols;

  bool hi_at(int r, int c) const { return hi[std::size_t(r) * n + c] != 0; }
  bool lo_at(int r, int c) const { return lo[std::size_t(r) * n + c] != 0; }

  bool extension_ok(int r, int c) const {
    if (!hi_at(r, c)) return false;
    for (int cj : cols)
      if (!lo_at(r, cj)) return false;  // new row below old columns
    for (int ri : rows)
      if (!hi_at(ri, c)) return false;  // old rows above the new column
    return true;
  }

  void dfs() {
    if (rows.size() > best_rows.size()) {
      best_rows = rows;
      best_cols = cols;
    }
    // Cannot beat the best even if every remaining row/col pairs up.
    std::size_t headroom =
        std::min(std::size_t(m) - rows.size(), std::size_t(n) - cols.size());
    if (rows.size() + headroom <= best_rows.size()) return;

    for (int r = 0; r < m; ++r) {
      if (row_used[std::size_t(r)]) continue;
      for (int c = 0; c < n; ++c) {
        if (col_used[std::size_t(c)]) continue;
        if (!extension_ok(r, c)) continue;
        rows.push_back(r);
        cols.push_back(c);
        row_used[std::size_t(r)] = col_used[std::size_t(c)] = 1;
        dfs();
        row_used[std::size_t(r)] = col_used[std::size_t(c)] = 0;
        rows.pop_back();
        cols.pop_back();
      }
    }
  }

  // Lexicographically-first feasible extension each step.
  void greedy() {
    while (true) {
      bool extended = false;
      for (int r = 0; r < m && !extended; ++r) {
        if (row_used[std::size_t(r)]) continue;
        for (int c = 0; c < n; ++c) {
          if (col_used[std::size_t(c)]) continue;
          if (!extension_ok(r, c)) continue;
          rows.push_back(r);
          cols.push_back(c);
          row_used[std::size_t(r)] = col_used[std::size_t(c)] = 1;
          extended = true;
          break;
        }
      }
      if (!extended) break;
    }
    best_rows = rows;
    best_cols = cols;
  }

  static PatternSearch make(int m, int n) {
    PatternSearch s;
    s.m = m;
    s.n = n;
    s.hi.assign(std::size_t(m) * n, 0);
    s.lo.assign(std::size_t(m) * n, 0);
    s.row_used.assign(std::size_t(m), 0);
    s.col_used.assign(std::size_t(n), 0);
    return s;
  }
};

PatternSearch binary_pattern_search(const FiniteConceptClass& cls) {
  PatternSearch s = PatternSearch::make(cls.size(), cls.domain_size());
  for (int r = 0; r < s.m; ++r)
    for (int c = 0; c < s.n; ++c) {
      s.hi[std::size_t(r) * s.n + c] = cls.at(r, c) == 1.0;
      s.lo[std::size_t(r) * s.n + c] = cls.at(r, c) == 0.0;
    }
  return s;
}

}  // namespace

DimensionReport threshold_dimension(const FiniteConceptClass& cls,
                                    const Caps& caps) {
  if (cls.label_kind() != LabelKind::binary)
    throw input_error("threshold_dimension requires a binary class");
  if (cls.size() > caps.threshold_max_side ||
      cls.domain_size() > caps.threshold_max_side)
    throw cap_error(
        "threshold_dimension: exact mode caps rows and cols at " +
        std::to_string(caps.threshold_max_side) +
        "; use the greedy lower-bound mode for larger instances");

  PatternSearch s = binary_pattern_search(cls);
  s.dfs();
  DimensionReport report;
  report.value = int(s.best_rows.size());
  report.witness.rows = s.best_rows;
  report.witness.cols = s.best_cols;
  return report;
}

DimensionReport threshold_dimension_greedy(const FiniteConceptClass& cls) {
  if (cls.label_kind() != LabelKind::binary)
    throw input_error("threshold_dimension requires a binary class");
  PatternSearch s = binary_pattern_search(cls);
  s.greedy();
  DimensionReport report;
  report.value = int(s.best_rows.size());
  report.search_exhaustive = false;
  report.witness.rows = s.best_rows;
  report.witness.cols = s.best_cols;
  return report;
}

DimensionReport fat_threshold_dimension(const RealMatrix& m, double eps,
                                        const Caps& caps) {
  m.validate_unit_range();
  if (eps <= 0.0) throw input_error("eps must be positive");
  if (m.rows > caps.threshold_max_side || m.cols > caps.threshold_max_side)
    throw cap_error("fat_threshold_dimension: exact mode caps rows and cols at " +
                    std::to_string(caps.threshold_max_side));

  std::vector<double> candidates(m.entries);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  DimensionReport report;
  for (double theta : candidates) {
    PatternSearch s = PatternSearch::make(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < m.cols; ++c) {
        s.hi[std::size_t(r) * s.n + c] = ge_margin(m.at(r, c), theta, eps);
        s.lo[std::size_t(r) * s.n + c] = le_theta(m.at(r, c), theta);
      }
    s.dfs();
    if (int(s.best_rows.size()) > report.value) {
      report.value = int(s.best_rows.size());
      report.witness.rows = s.best_rows;
      report.witness.cols = s.best_cols;
      report.witness.theta = theta;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Fat-shattering: DFS over column subsets; per-column witnesses range over
// that column's entry values.

namespace {

struct FatContext {
  const RealMatrix& m;
  double eps;
  std::vector<std::vector<double>> col_candidates;  // usable thetas per column

  // Does some witness assignment over `cols` realize all patterns?
  bool shatterable(const std::vector<int>& cols, std::vector<double>& thetas_out) {
    std::vector<double> assignment(cols.size());
    return assign(cols, 0, assignment, thetas_out);
  }

  bool assign(const std::vector<int>& cols, std::size_t at,
              std::vector<double>& assignment, std::vector<double>& out) {
    if (at == cols.size()) {
      if (!covers(cols, assignment)) return false;
      out = assignment;
      return true;
    }
    for (double theta : col_candidates[std::size_t(cols[at])]) {
      assignment[at] = theta;
      if (assign(cols, at + 1, assignment, out)) return true;
    }
    return false;
  }

  bool covers(const std::vector<int>& cols, const std::vector<double>& thetas) {
    const std::size_t want = std::size_t(1) << cols.size();
    std::set<std::uint32_t> seen;
    for (int r = 0; r < m.rows; ++r) {
      std::uint32_t pattern = 0;
      bool usable = true;
      for (std::size_t b = 0; b < cols.size() && usable; ++b) {
        double v = m.at(r, cols[b]);
        if (ge_margin(v, thetas[b], eps))
          pattern |= (1u << b);
        else if (!le_theta(v, thetas[b]))
          usable = false;  // strictly inside the margin: serves no pattern
      }
      if (usable) seen.insert(pattern);
      if (seen.size() == want) return true;
    }
    return false;
  }
};

}  // namespace

DimensionReport fat_shattering_dimension(const RealMatrix& m, double eps,
                                         const Caps& caps) {
  m.validate_unit_range();
  if (eps <= 0.0) throw input_error("eps must be positive");
  if (m.cols > caps.fat_max_domain)
    throw cap_error("fat_shattering_dimension: domain size exceeds cap " +
                    std::to_string(caps.fat_max_domain));

  FatContext ctx{m, eps, {}};
  ctx.col_candidates.resize(std::size_t(m.cols));
  for (int c = 0; c < m.cols; ++c) {
    std::vector<double> values;
    for (int r = 0; r < m.rows; ++r) values.push_back(m.at(r, c));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    // A usable theta must leave room on both sides of the margin.
    for (double theta : values) {
      bool has_hi = false, has_lo = false;
      for (int r = 0; r < m.rows; ++r) {
        has_hi |= ge_margin(m.at(r, c), theta, eps);
        has_lo |= le_theta(m.at(r, c), theta);
      }
      if (has_hi && has_lo) ctx.col_candidates[std::size_t(c)].push_back(theta);
    }
  }

  int d_max = 0;
  while ((1 << (d_max + 1)) <= m.rows && d_max + 1 <= m.cols) ++d_max;

  DimensionReport report;
  for (int d = 1; d <= d_max; ++d) {
    std::vector<int> found_cols;
    std::vector<double> found_thetas;
    bool ok = any_combination(m.cols, d, [&](std::span<const int> c) {
      std::vector<int> cols(c.begin(), c.end());
      for (int col : cols)
        if (ctx.col_candidates[std::size_t(col)].empty()) return false;
      std::vector<double> thetas;
      if (!ctx.shatterable(cols, thetas)) return false;
      found_cols = cols;
      found_thetas = thetas;
      return true;
    });
    if (!ok) break;
    report.value = d;
    report.witness.cols = found_cols;
    report.witness.thetas = found_thetas;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sequential fat-shattering: depth-capped recursion; saturates at the cap.

namespace {

struct SfatContext {
  const RealMatrix& m;
  double eps;
  long restriction_budget;
  long restrictions = 0;

  // min(sfat(rows), budget)
  int rec(const std::vector<int>& rows, int budget) {
    if (budget == 0 || rows.empty()) return 0;
    if (++restrictions > restriction_budget)
      throw cap_error("sequential_fat_dimension: restriction budget exhausted");
    int best = 0;
    for (int x = 0; x < m.cols && best < budget; ++x) {
      for (double theta : thetas_for(rows, x)) {
        std::vector<int> hi, lo;
        split(rows, x, theta, hi, lo);
        if (hi.empty() || lo.empty()) continue;
        int v = 1 + std::min(rec(hi, budget - 1), rec(lo, budget - 1));
        best = std::max(best, v);
        if (best == budget) break;
      }
    }
    return best;
  }

  std::vector<double> thetas_for(const std::vector<int>& rows, int x) const {
    std::vector<double> values;
    for (int r : rows) values.push_back(m.at(r, x));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
  }

  void split(const std::vector<int>& rows, int x, double theta,
             std::vector<int>& hi, std::vector<int>& lo) const {
    for (int r : rows) {
      double v = m.at(r, x);
      if (ge_margin(v, theta, eps))
        hi.push_back(r);
      else if (le_theta(v, theta))
        lo.push_back(r);
    }
  }

  void build(const std::vector<int>& rows, int d, std::size_t node,
             std::size_t leaf_base, DimensionWitness& w) {
    if (d == 0) {
      w.tree_leaves[leaf_base] = rows.front();
      return;
    }
    for (int x = 0; x < m.cols; ++x) {
      for (double theta : thetas_for(rows, x)) {
        std::vector<int> hi, lo;
        split(rows, x, theta, hi, lo);
        if (hi.empty() || lo.empty()) continue;
        if (rec(hi, d - 1) >= d - 1 && rec(lo, d - 1) >= d - 1) {
          w.tree_xs[node] = x;
          w.tree_thetas[node] = theta;
          build(hi, d - 1, 2 * node + 1, leaf_base, w);
          build(lo, d - 1, 2 * node + 2, leaf_base + (std::size_t(1) << (d - 1)), w);
          return;
        }
      }
    }
  }
};

}  // namespace

DimensionReport sequential_fat_dimension(const RealMatrix& m, double eps,
                                         const Caps& caps) {
  m.validate_unit_range();
  if (eps <= 0.0) throw input_error("eps must be positive");

  SfatContext ctx{m, eps, caps.littlestone_max_restrictions};
  std::vector<int> all(static_cast<std::size_t>(m.rows));
  for (int i = 0; i < m.rows; ++i) all[std::size_t(i)] = i;

  DimensionReport report;
  const int cap = caps.sfat_depth_cap;
  int r = ctx.rec(all, cap + 1);
  if (r <= cap) {
    report.value = r;
    report.witness.tree_xs.assign((std::size_t(1) << r) - 1, 0);
    report.witness.tree_thetas.assign((std::size_t(1) << r) - 1, 0.0);
    report.witness.tree_leaves.assign(std::size_t(1) << r, 0);
    ctx.build(all, r, 0, 0, report.witness);
  } else {
    report.value = cap;  // at least this deep; exact search stopped here
    report.saturated = true;
    report.search_exhaustive = false;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Witness replay.

namespace {

bool distinct_within(std::span<const int> xs, int bound) {
  std::set<int> seen;
  for (int x : xs) {
    if (x < 0 || x >= bound) return false;
    if (!seen.insert(x).second) return false;
  }
  return true;
}

}  // namespace

bool replay_vc_witness(const FiniteConceptClass& cls, const DimensionReport& r) {
  const auto& cols = r.witness.cols;
  if (int(cols.size()) != r.value) return false;
  if (!distinct_within(cols, cls.domain_size())) return false;
  return r.value == 0 || subset_shattered(cls, cols);
}

bool replay_littlestone_witness(const FiniteConceptClass& cls,
                                const DimensionReport& r) {
  const int d = r.value;
  const auto& w = r.witness;
  if (w.tree_xs.size() != (std::size_t(1) << d) - 1) return false;
  if (w.tree_leaves.size() != std::size_t(1) << d) return false;
  for (std::size_t leaf = 0; leaf < w.tree_leaves.size(); ++leaf) {
    int h = w.tree_leaves[leaf];
    if (h < 0 || h >= cls.size()) return false;
    std::size_t node = 0;
    for (int level = 0; level < d; ++level) {
      int bit = int((leaf >> (d - 1 - level)) & 1u);
      int x = w.tree_xs[node];
      if (x < 0 || x >= cls.domain_size()) return false;
      // leaf bit 1 = left child = label 1 on the node's point
      if (cls.at(h, x) != (bit ? 1.0 : 0.0)) return false;
      node = 2 * node + (bit ? 1 : 2);
    }
  }
  return true;
}

bool replay_threshold_witness(const FiniteConceptClass& cls,
                              const DimensionReport& r) {
  const auto& w = r.witness;
  if (int(w.rows.size()) != r.value || int(w.cols.size()) != r.value)
    return false;
  if (!distinct_within(w.rows, cls.size())) return false;
  if (!distinct_within(w.cols, cls.domain_size())) return false;
  for (std::size_t i = 0; i < w.rows.size(); ++i)
    for (std::size_t j = 0; j < w.cols.size(); ++j) {
      double v = cls.at(w.rows[i], w.cols[j]);
      if (v != (i <= j ? 1.0 : 0.0)) return false;
    }
  return true;
}

bool replay_fat_threshold_witness(const RealMatrix& m, double eps,
                                  const DimensionReport& r) {
  const auto& w = r.witness;
  if (int(w.rows.size()) != r.value || int(w.cols.size()) != r.value)
    return false;
  if (r.value == 0) return true;
  if (!w.theta.has_value()) return false;
  if (!distinct_within(w.rows, m.rows) || !distinct_within(w.cols, m.cols))
    return false;
  for (std::size_t i = 0; i < w.rows.size(); ++i)
    for (std::size_t j = 0; j < w.cols.size(); ++j) {
      double v = m.at(w.rows[i], w.cols[j]);
      if (i <= j ? !ge_margin(v, *w.theta, eps) : !le_theta(v, *w.theta))
        return false;
    }
  return true;
}

bool replay_fat_witness(const RealMatrix& m, double eps,
                        const DimensionReport& r) {
  const auto& w = r.witness;
  if (int(w.cols.size()) != r.value || w.thetas.size() != w.cols.size())
    return false;
  if (!distinct_within(w.cols, m.cols)) return false;
  if (r.value == 0) return true;
  const std::size_t want = std::size_t(1) << w.cols.size();
  std::set<std::uint32_t> seen;
  for (int row = 0; row < m.rows; ++row) {
    std::uint32_t pattern = 0;
    bool usable = true;
    for (std::size_t b = 0; b < w.cols.size() && usable; ++b) {
      double v = m.at(row, w.cols[b]);
      if (ge_margin(v, w.thetas[b], eps))
        pattern |= (1u << b);
      else if (!le_theta(v, w.thetas[b]))
        usable = false;
    }
    if (usable) seen.insert(pattern);
  }
  return seen.size() == want;
}

bool replay_sfat_witness(const RealMatrix& m, double eps,
                         const DimensionReport& r) {
  if (r.saturated) return true;  // the cap report carries no tree
  const int d = r.value;
  const auto& w = r.witness;
  if (w.tree_xs.size() != (std::size_t(1) << d) - 1) return false;
  if (w.tree_thetas.size() != w.tree_xs.size()) return false;
  if (w.tree_leaves.size() != std::size_t(1) << d) return false;
  for (std::size_t leaf = 0; leaf < w.tree_leaves.size(); ++leaf) {
    int h = w.tree_leaves[leaf];
    if (h < 0 || h >= m.rows) return false;
    std::size_t node = 0;
    for (int level = 0; level < d; ++level) {
      int bit = int((leaf >> (d - 1 - level)) & 1u);
      int x = w.tree_xs[node];
      double theta = w.tree_thetas[node];
      if (x < 0 || x >= m.cols) return false;
      double v = m.at(h, x);
      if (bit ? !ge_margin(v, theta, eps) : !le_theta(v, theta)) return false;
      node = 2 * node + (bit ? 1 : 2);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

FiniteConceptClass xor_class(const FiniteConceptClass& cls,
                             std::span<const double> g) {
  if (cls.label_kind() != LabelKind::binary)
    throw input_error("xor_class requires a binary class");
  if (int(g.size()) != cls.domain_size())
    throw input_error("xor vector length mismatch");
  for (double v : g)
    if (v != 0.0 && v != 1.0) throw input_error("xor vector must be 0/1");

  std::vector<std::vector<double>> rows(static_cast<std::size_t>(cls.size()));
  for (int i = 0; i < cls.size(); ++i) {
    rows[std::size_t(i)].resize(std::size_t(cls.domain_size()));
    for (int j = 0; j < cls.domain_size(); ++j)
      rows[std::size_t(i)][std::size_t(j)] = cls.at(i, j) != g[std::size_t(j)] ? 1.0 : 0.0;
  }
  return FiniteConceptClass(cls.domain_size(), LabelKind::binary, std::move(rows));
}

FiniteConceptClass random_twostage_class(int n, int ell, double p_hi,
                                         double p_lo, std::uint64_t seed) {
  if (n < 1 || ell < 1) throw input_error("twostage class needs n, ell >= 1");
  if (!(p_hi >= 0.0 && p_hi <= 1.0 && p_lo >= 0.0 && p_lo <= 1.0))
    throw input_error("Bernoulli parameters must lie in [0,1]");

  SplitMix64 rng(seed);
  std::vector<std::vector<double>> rows;
  rows.reserve(std::size_t(n) * std::size_t(ell));
  for (int group = 1; group <= n; ++group) {
    for (int k = 0; k < ell; ++k) {
      std::vector<double> row(static_cast<std::size_t>(n));
      for (int j = 1; j <= n; ++j)
        row[std::size_t(j - 1)] =
            rng.bernoulli(group <= j ? p_hi : p_lo) ? 1.0 : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return FiniteConceptClass(n, LabelKind::binary, std::move(rows));
}

RealMatrix group_mean_matrix(const FiniteConceptClass& cls, int n, int ell) {
  if (cls.size() != n * ell || cls.domain_size() != n)
    throw input_error("class shape does not match (n, ell)");
  RealMatrix m = RealMatrix::zeros(n, n);
  for (int group = 0; group < n; ++group)
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int k = 0; k < ell; ++k) sum += cls.at(group * ell + k, j);
      m.at(group, j) = sum / double(ell);
    }
  return m;
}

}  // namespace og
