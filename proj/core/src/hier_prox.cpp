#include "lassornet/hier_prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lassornet {

namespace {

constexpr double kBoundarySlack = 1e-12;

void validate(const HierProxProblem& p) {
  if (p.gate_rows.empty()) {
    throw DimensionMismatchError("hier_prox: at least one gate row required");
  }
  const Eigen::Index width = p.gate_rows.front().size();
  for (const auto& row : p.gate_rows) {
    if (row.size() != width) {
      throw DimensionMismatchError("hier_prox: gate rows differ in length");
    }
  }
  if (p.lambda < 0.0 || p.lambda_bar < 0.0 || p.tau < 0.0) {
    throw OutOfRangeError("hier_prox: penalties must be nonnegative");
  }
}

// Soft-thresholded magnitudes per row, sorted descending.
std::vector<Eigen::VectorXd> thresholded_magnitudes(const HierProxProblem& p) {
  std::vector<Eigen::VectorXd> mags;
  mags.reserve(p.gate_rows.size());
  for (const auto& row : p.gate_rows) {
    Eigen::VectorXd m(row.size());
    for (Eigen::Index j = 0; j < row.size(); ++j) {
      m[j] = soft_threshold(std::fabs(row[j]), p.lambda_bar);
    }
    std::sort(m.data(), m.data() + m.size(), std::greater<double>());
    mags.push_back(std::move(m));
  }
  return mags;
}

struct Candidate {
  HierProxSolution solution;
  double objective_value = std::numeric_limits<double>::infinity();
  int total_clips = 0;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.objective_value != b.objective_value) {
    return a.objective_value < b.objective_value;
  }
  if (a.total_clips != b.total_clips) return a.total_clips < b.total_clips;
  return a.solution.clip_counts < b.solution.clip_counts;
}

}  // namespace

double soft_threshold(double x, double lam) {
  const double m = std::fabs(x) - lam;
  if (m <= 0.0) return 0.0;
  return x < 0.0 ? -m : m;
}

double threshold_offset(const HierProxProblem& p, const std::vector<int>& clip_counts) {
  validate(p);
  if (clip_counts.size() != p.gate_rows.size()) {
    throw DimensionMismatchError("threshold_offset: one clip count per gate row");
  }
  double total_clips = 0.0;
  double clipped_mass = 0.0;
  for (std::size_t l = 0; l < p.gate_rows.size(); ++l) {
    const int s = clip_counts[l];
    if (s < 0 || s > static_cast<int>(p.gate_rows[l].size())) {
      throw OutOfRangeError("threshold_offset: clip count outside [0, K]");
    }
    total_clips += s;
    // the clipped coordinates are the s largest by raw magnitude (the
    // descending-magnitude ordering of the row)
    Eigen::VectorXd raw(p.gate_rows[l].size());
    for (Eigen::Index j = 0; j < raw.size(); ++j) raw[j] = std::fabs(p.gate_rows[l][j]);
    std::sort(raw.data(), raw.data() + raw.size(), std::greater<double>());
    for (int j = 0; j < s; ++j) clipped_mass += raw[j];
  }
  return p.lambda + p.lambda_bar * p.tau * total_clips - p.tau * clipped_mass;
}

HierProxSolution solve_at(const HierProxProblem& p, const std::vector<int>& clip_counts) {
  validate(p);
  HierProxSolution sol;
  sol.clip_counts = clip_counts;
  sol.threshold = threshold_offset(p, clip_counts);

  double total_clips = 0.0;
  for (const int s : clip_counts) total_clips += s;

  const double v_norm = p.beta_row.norm();
  if (v_norm == 0.0) {
    sol.beta_row = Eigen::VectorXd::Zero(p.beta_row.size());
  } else {
    const double scale = std::max(1.0 - sol.threshold / v_norm, 0.0) /
                         (1.0 + p.tau * p.tau * total_clips);
    sol.beta_row = scale * p.beta_row;
  }

  const double cap = p.tau * sol.beta_row.norm();
  sol.gate_rows.reserve(p.gate_rows.size());
  for (const auto& row : p.gate_rows) {
    Eigen::VectorXd w(row.size());
    for (Eigen::Index j = 0; j < row.size(); ++j) {
      const double st = soft_threshold(std::fabs(row[j]), p.lambda_bar);
      const double mag = std::min(cap, st);
      w[j] = row[j] < 0.0 ? -mag : mag;
    }
    sol.gate_rows.push_back(std::move(w));
  }
  return sol;
}

double objective(const HierProxProblem& p, const Eigen::VectorXd& beta_row,
                 const std::vector<Eigen::VectorXd>& gate_rows) {
  validate(p);
  if (beta_row.size() != p.beta_row.size() || gate_rows.size() != p.gate_rows.size()) {
    throw DimensionMismatchError("objective: shape mismatch with problem");
  }
  double value = 0.5 * (p.beta_row - beta_row).squaredNorm() + p.lambda * beta_row.norm();
  for (std::size_t l = 0; l < gate_rows.size(); ++l) {
    value += 0.5 * (p.gate_rows[l] - gate_rows[l]).squaredNorm() +
             p.lambda_bar * gate_rows[l].lpNorm<1>();
  }
  return value;
}

HierProxSolution prox(const HierProxProblem& p) {
  validate(p);
  const auto mags = thresholded_magnitudes(p);
  const std::size_t rows = mags.size();

  // distinct positive breakpoints of the sweep, ascending
  std::vector<double> breaks;
  for (const auto& m : mags) {
    for (Eigen::Index j = 0; j < m.size(); ++j) {
      if (m[j] > 0.0) breaks.push_back(m[j]);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // Interval i covers [lower_i, next break); its clip counts are the
  // number of thresholded magnitudes strictly above the lower edge.
  std::vector<double> lowers;
  lowers.push_back(0.0);
  for (const double b : breaks) lowers.push_back(b);

  std::vector<Candidate> consistent;
  Candidate fallback_best;
  bool have_fallback = false;

  for (std::size_t i = 0; i < lowers.size(); ++i) {
    const double lo = lowers[i];
    const double hi =
        (i + 1 < lowers.size()) ? lowers[i + 1] : std::numeric_limits<double>::infinity();

    std::vector<int> counts(rows, 0);
    for (std::size_t l = 0; l < rows; ++l) {
      const auto& m = mags[l];
      int s = 0;
      while (s < static_cast<int>(m.size()) && m[s] > lo) ++s;
      counts[l] = s;
    }

    Candidate cand;
    cand.solution = solve_at(p, counts);
    cand.objective_value = objective(p, cand.solution.beta_row, cand.solution.gate_rows);
    cand.total_clips = 0;
    for (const int s : counts) cand.total_clips += s;

    const double fixed_point = p.tau * cand.solution.beta_row.norm();
    if (fixed_point >= lo - kBoundarySlack && fixed_point < hi + kBoundarySlack) {
      consistent.push_back(cand);
    }
    if (!have_fallback || better(cand, fallback_best)) {
      fallback_best = cand;
      have_fallback = true;
    }
  }

  if (consistent.empty()) {
    // Floating point pushed every fixed point off its interval; the
    // optimum still lies on the staircase, so the best staircase point
    // is returned.
    return fallback_best.solution;
  }
  Candidate best = consistent.front();
  for (std::size_t i = 1; i < consistent.size(); ++i) {
    if (better(consistent[i], best)) best = consistent[i];
  }
  return best.solution;
}

}  // namespace lassornet
