#ifndef OG_EQUILIBRIA_HPP
#define OG_EQUILIBRIA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "og/caps.hpp"
#include "og/games.hpp"
#include "og/rng.hpp"
#include "og/transcript.hpp"

namespace og {

// Raised when a double-oracle loop breaches its iteration cap; carries
// everything solved so far.
class iteration_cap_error : public std::runtime_error {
 public:
  iteration_cap_error(const std::string& what, SolveTranscript transcript)
      : std::runtime_error(what), transcript_(std::move(transcript)) {}
  const SolveTranscript& transcript() const { return transcript_; }

 private:
  SolveTranscript transcript_;
};

// eps-best response to a mixture over the caller's side.
using BestResponseFn =
    std::function<ActionId(const MixedStrategy& opponents_mixture, double eps)>;

struct HalfInfiniteResult {
  MixedStrategy finite_side;  // average of the MW mixtures
  MixedStrategy oracle_side;  // empirical distribution of the best responses
  long rounds = 0;
  long oracle_calls = 0;
  double mw_regret = 0.0;        // realized, in the MW's normalized loss units
  double mw_regret_bound = 0.0;  // 2 sqrt(T log n)
};

// Nash for a half-infinite zero-sum game: the finite side runs
// multiplicative weights for ceil(16 log(n+1)/eps^2) rounds while the other
// side best-responds to the running uniform average of the MW mixtures.
// finite_player says which player the finite set belongs to (1 = minimizer).
HalfInfiniteResult nash_half_infinite(const ZeroSumGame& game,
                                      std::span<const ActionId> finite_actions,
                                      int finite_player,
                                      const BestResponseFn& oracle, double eps,
                                      SolveTranscript* transcript = nullptr,
                                      long at_iteration = 0);

// Convenience wrapper matching the common case: player 1 owns the finite
// set, player 2 answers through its best-response oracle.
HalfInfiniteResult nash_half_infinite(const ZeroSumGame& game,
                                      std::span<const ActionId> finite_side,
                                      const BestResponseFn& player2_oracle,
                                      double eps);

struct EquilibriumCertificate {
  std::string kind;  // "zero-sum" | "cce"
  double eps = 0.0;
  double val_tol = 0.0;
  double claimed_epsilon = 0.0;
  std::uint64_t seed = 0;
  double value = 0.0;  // zero-sum: u(strategy1, strategy2)
  MixedStrategy strategy1, strategy2;  // zero-sum only
  JointDistribution joint;             // cce only
  long iterations = 0;
  long oracle_calls = 0;
};

struct SolveResult {
  EquilibriumCertificate certificate;
  SolveTranscript transcript;
};

struct ZeroSumOracles {
  BestResponseFn player1;  // responds to a mixture over B
  BestResponseFn player2;  // responds to a mixture over A
  ActionId seed_a = 0;
  ActionId seed_b = 0;
};

ZeroSumOracles tensor_oracles(const ZeroSumGame& game);

// Alternating double oracle (both sides grown through best responses),
// stopping when neither side can move the restricted value by more than eps.
// Val comparisons run finite_value at val_tol with thresholds widened by
// 2*val_tol so approximation cannot flip a decisive comparison.
SolveResult nash_zero_sum(const ZeroSumGame& game, const ZeroSumOracles& oracles,
                          double eps, double val_tol, std::uint64_t seed = 0,
                          const Caps& caps = Caps::from_env());

// CCE of the finite subgame with supports B_p: every player runs MW for
// ceil(16 log(max|B_p|+1)/eps^2) rounds. In sampled mode (the repeated-game
// reading) each round realizes one seeded profile and the output is the
// empirical distribution; the expectation-exact mode accumulates the product
// mixtures instead and is deterministic given only the inputs.
enum class CceMode { sampled, expectation_exact };
JointDistribution finite_cce(const MultiPlayerGame& game,
                             const std::vector<std::vector<ActionId>>& supports,
                             double eps, SplitMix64& rng,
                             CceMode mode = CceMode::sampled);

struct BestDeviation {
  int player = 0;
  ActionId action = 0;
  double gain = 0.0;
};

// eps-best column of the CCE matrix against a profile distribution: one
// best-response call per player, then the player with the largest gain.
BestDeviation best_deviation(const MultiPlayerGame& game,
                             const JointDistribution& joint, double eps,
                             SolveTranscript* transcript = nullptr,
                             long at_iteration = 0);

// Multi-player double oracle over the CCE matrix: profile support grows
// through finite-subgame CCEs, deviation support through best deviations;
// stops when the restricted CCE-matrix value falls to 3*eps (+ tolerance).
SolveResult cce_multiplayer(const MultiPlayerGame& game, double eps,
                            double val_tol, std::uint64_t seed = 0,
                            CceMode mode = CceMode::sampled,
                            const Caps& caps = Caps::from_env());

}  // namespace og

#endif  // OG_EQUILIBRIA_HPP
