#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lassornet/circular_time.hpp"
#include "lassornet/cohort.hpp"
#include "lassornet/errors.hpp"

namespace lassornet {

// Gate order inside the weight-block arrays.
enum Gate : int {
  kInputGate = 0,
  kForgetGate = 1,
  kCandidate = 2,
  kOutputGate = 3,
};

// One directional LSTM.  Row-vector convention throughout: an input step
// is 1 x D, hidden state 1 x H.  Each gate has an input block (D x H), a
// recurrent block (H x H) and two bias rows as written in the unit's
// defining equations (the pair is redundant but kept; their gradients
// coincide).
struct LstmCell {
  std::array<Eigen::MatrixXd, 4> w_in;
  std::array<Eigen::MatrixXd, 4> w_rec;
  std::array<Eigen::RowVectorXd, 4> b_in;
  std::array<Eigen::RowVectorXd, 4> b_rec;

  void resize_zero(int input_dim, int hidden);
};

// Bidirectional LSTM with a linear residual connection:
//
//   o_j    = h_fwd_j W_out_fwd + h_bwd_j W_out_bwd + b_out
//   pred_j = o_j head + x_j residual + intercept
//
// Hidden and cell states start at zero in both directions; the backward
// direction processes the sequence last-to-first.
struct BiLstmModel {
  int input_dim = 0;
  int hidden = 0;
  int output = 0;

  LstmCell fwd;
  LstmCell bwd;
  Eigen::MatrixXd w_out_fwd;     // H x P
  Eigen::MatrixXd w_out_bwd;     // H x P
  Eigen::RowVectorXd b_out;      // 1 x P
  Eigen::MatrixXd head;          // P x 2  (weights on the sequence output)
  Eigen::MatrixXd residual;      // D x 2  (linear model on the raw inputs)
  Eigen::RowVectorXd intercept;  // 1 x 2

  static BiLstmModel zeros(int input_dim, int hidden, int output);
  // Training start: recurrent and output-combination blocks uniform on
  // (-1/sqrt(H), 1/sqrt(H)); input gate blocks, gate biases, head,
  // residual and intercept all zero, so the model is exactly linear and
  // feasible for any hierarchy bound at the first proximal step.
  static BiLstmModel seeded(int input_dim, int hidden, int output, std::uint64_t seed);

  // max over input rows and gates of |w_in entry| - tau * ||residual row||
  double max_constraint_violation(double tau) const;
  // input rows whose residual pair is nonzero
  std::vector<int> selected_inputs() const;
};

// Fixed-order traversal of every weight block; shared by the update step,
// the serializer and the finite-difference tests.
template <class Model, class Fn>
void visit_blocks(Model& m, Fn&& fn) {
  const char* gate_names[4] = {"input", "forget", "candidate", "output"};
  for (int d = 0; d < 2; ++d) {
    auto& cell = d == 0 ? m.fwd : m.bwd;
    const std::string dir = d == 0 ? "fwd." : "bwd.";
    for (int g = 0; g < 4; ++g) {
      fn(dir + "w_in." + gate_names[g], cell.w_in[g]);
      fn(dir + "w_rec." + gate_names[g], cell.w_rec[g]);
    }
    for (int g = 0; g < 4; ++g) {
      fn(dir + "b_in." + gate_names[g], cell.b_in[g]);
      fn(dir + "b_rec." + gate_names[g], cell.b_rec[g]);
    }
  }
  fn("w_out_fwd", m.w_out_fwd);
  fn("w_out_bwd", m.w_out_bwd);
  fn("b_out", m.b_out);
  fn("head", m.head);
  fn("residual", m.residual);
  fn("intercept", m.intercept);
}

// Flat views of every block in visit order, for elementwise updates and
// coordinate addressing.
inline std::vector<std::pair<double*, Eigen::Index>> block_views(BiLstmModel& m) {
  std::vector<std::pair<double*, Eigen::Index>> views;
  visit_blocks(m, [&](const std::string&, auto& block) {
    views.emplace_back(block.data(), block.size());
  });
  return views;
}

inline std::vector<std::pair<const double*, Eigen::Index>> block_views(const BiLstmModel& m) {
  std::vector<std::pair<const double*, Eigen::Index>> views;
  visit_blocks(m, [&](const std::string&, const auto& block) {
    views.emplace_back(block.data(), block.size());
  });
  return views;
}

// y += a * x over every weight block.
void axpy(BiLstmModel& y, double a, const BiLstmModel& x);

// One person's sequence: inputs are N x D (genes, plus the encoded ZT
// pair when augmented); targets are the encoded internal-time pairs,
// N x 2, empty when the person has no DLMO label.
struct PersonSequence {
  std::string person_id;
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd targets;
  std::vector<CircTime> zts;
  std::vector<CircTime> truth_ict;  // defined only when targets exist
  std::optional<CircTime> dlmo;
};

struct SequenceBatch {
  std::vector<PersonSequence> people;
  int input_dim = 0;
  std::size_t total_labelled_samples = 0;  // rows contributing to the loss
};

// Builds sequences from a normalized cohort.  People without a DLMO label
// get inputs but no targets (usable for prediction, skipped by the loss).
SequenceBatch sequence_batch(const NormalizedCohort& cohort, bool zt_augmented);

// Flat per-sample design for the linear baselines; only people with a
// DLMO label contribute rows.
struct FlatDesign {
  Eigen::MatrixXd inputs;   // n x D
  Eigen::MatrixXd targets;  // n x 2
  std::vector<CircTime> zts;
  std::vector<CircTime> truth_ict;
  std::vector<std::size_t> person_index;  // row -> cohort person
  int input_dim = 0;
};

FlatDesign flat_design(const NormalizedCohort& cohort, bool zt_augmented);

// Deterministic forward pass over one person's inputs; returns N x 2.
Eigen::MatrixXd forward(const BiLstmModel& model, const Eigen::MatrixXd& inputs);

// (1 / (2 * total labelled samples)) * sum of squared pair residuals.
double loss(const BiLstmModel& model, const SequenceBatch& batch);

// Exact gradient of loss() for every block, returned in a same-shape
// model.  Per-person contributions are accumulated in batch order.
BiLstmModel gradients(const BiLstmModel& model, const SequenceBatch& batch);

}  // namespace lassornet
