#include "og/mw.hpp"

#include <algorithm>
#include <cassert>

#include "og/errors.hpp"

namespace og {

void mw_exponential_update(std::span<double> weights,
                           std::span<const double> losses, double eta) {
  assert(weights.size() == losses.size());
  double z = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] *= std::exp(-eta * losses[i]);
    z += weights[i];
  }
  for (auto& w : weights) w /= z;
}

MwLearner::MwLearner(int n_experts, double eta)
    : weights_(n_experts, n_experts > 0 ? 1.0 / n_experts : 0.0),
      cumulative_(n_experts, 0.0),
      eta_(eta) {
  if (n_experts <= 0) throw input_error("MwLearner needs at least one expert");
}

double MwLearner::observe(std::span<const double> losses) {
  if (losses.size() != weights_.size())
    throw input_error("loss vector length mismatch");
  double mix = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    mix += weights_[i] * losses[i];
    cumulative_[i] += losses[i];
  }
  master_loss_ += mix;
  ++rounds_;
  mw_exponential_update(weights_, losses, eta_);
  return mix;
}

double MwLearner::best_expert_loss() const {
  return *std::min_element(cumulative_.begin(), cumulative_.end());
}

}  // namespace og
