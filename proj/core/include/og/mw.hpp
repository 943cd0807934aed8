#ifndef OG_MW_HPP
#define OG_MW_HPP

#include <cmath>
#include <span>
#include <vector>

namespace og {

// Hedge learning rate for N experts over a T-round horizon.
inline double mw_learning_rate(int n_experts, long horizon) {
  if (n_experts <= 1 || horizon <= 0) return 0.0;
  return std::sqrt(std::log(double(n_experts)) / (2.0 * double(horizon)));
}

// One exponential-weights step: w_i *= exp(-eta * loss_i), then renormalize.
void mw_exponential_update(std::span<double> weights,
                           std::span<const double> losses, double eta);

// Multiplicative Weights over a fixed expert set: predicts its current
// mixture, observes a full loss vector in [0,1], updates. Tracks the
// running master loss and per-expert cumulative losses so regret can be
// read off any prefix of play.
class MwLearner {
 public:
  MwLearner(int n_experts, double eta);

  const std::vector<double>& weights() const { return weights_; }
  int experts() const { return static_cast<int>(weights_.size()); }
  long rounds() const { return rounds_; }
  double eta() const { return eta_; }

  // Mixture loss of the current weights against `losses`, before updating.
  double observe(std::span<const double> losses);

  double master_loss() const { return master_loss_; }
  double best_expert_loss() const;
  double regret() const { return master_loss_ - best_expert_loss(); }
  const std::vector<double>& cumulative_losses() const { return cumulative_; }

 private:
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  double eta_;
  double master_loss_ = 0.0;
  long rounds_ = 0;
};

}  // namespace og

#endif  // OG_MW_HPP
