#pragma once

#include <Eigen/Core>
#include <vector>

#include "lassornet/errors.hpp"

namespace lassornet {

// Hierarchical group-sparse proximal operator.
//
// For one input variable, the proximal step jointly updates the pair of
// residual-connection weights ("beta_row", length k) and the L gate-weight
// rows that interact with that variable ("gate_rows", each length K), by
// minimizing
//
//   (1/2)||v - b||^2 + lambda ||b||_2
//     + sum_l ( (1/2)||U_l - W_l||^2 + lambda_bar ||W_l||_1 )
//   subject to ||W_l||_inf <= tau ||b||_2 for every l.
//
// Both misfit terms carry the 1/2 factor: that is the convention under
// which the closed forms below are exact minimizers of the subproblem.
struct HierProxProblem {
  Eigen::VectorXd beta_row;                // v
  std::vector<Eigen::VectorXd> gate_rows;  // U_1 .. U_L, equal lengths
  double lambda = 0.0;                     // group penalty on b
  double lambda_bar = 0.0;                 // entrywise l1 penalty on W
  double tau = 0.0;                        // hierarchy bound
};

struct HierProxSolution {
  Eigen::VectorXd beta_row;                // b*
  std::vector<Eigen::VectorXd> gate_rows;  // W*_1 .. W*_L
  // Per row, the number of coordinates clipped at the constraint
  // boundary: tau||b||_2 lies in [ S(|U_(s+1)|), S(|U_(s)|) ) under the
  // descending-magnitude ordering, with |U_(0)| = +inf and |U_(K+1)| = 0.
  std::vector<int> clip_counts;
  // lambda + lambda_bar*tau*sum(s) - tau*sum of the clipped |U| values;
  // the effective group-shrinkage threshold applied to v.
  double threshold = 0.0;
};

// sign(x) * max(|x| - lam, 0)
double soft_threshold(double x, double lam);

// The effective shrinkage threshold induced by a vector of clip counts.
double threshold_offset(const HierProxProblem& p, const std::vector<int>& clip_counts);

// Closed-form minimizer for a fixed vector of clip counts:
//   b = (1 / (1 + tau^2 sum(s))) * max(1 - a_s/||v||, 0) * v   (b = 0 if v = 0)
//   W_l = sign(U_l) * min(tau ||b||, S_{lambda_bar}(|U_l|))    elementwise
HierProxSolution solve_at(const HierProxProblem& p, const std::vector<int>& clip_counts);

// Objective value at an arbitrary (b, W); feasibility is not required.
double objective(const HierProxProblem& p, const Eigen::VectorXd& beta_row,
                 const std::vector<Eigen::VectorXd>& gate_rows);

// Global minimizer.  Sweeps tau||b|| through the sorted soft-thresholded
// gate magnitudes; each sweep interval induces one clip-count vector, and
// candidates are those whose closed-form solution lands back inside the
// interval.  The objective picks the winner among candidates (ties:
// smaller total clip count, then lexicographic).  If floating-point
// boundary effects leave no self-consistent candidate, every interval's
// vector is evaluated instead; the optimum is always on that staircase.
HierProxSolution prox(const HierProxProblem& p);

}  // namespace lassornet
