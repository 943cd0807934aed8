#ifndef OG_ONLINE_HPP
#define OG_ONLINE_HPP

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "og/caps.hpp"
#include "og/concept_class.hpp"
#include "og/rng.hpp"
#include "og/transcript.hpp"

namespace og {

// Float slack on every `loss >= epsilon` comparison so a value that is
// exactly epsilon in exact arithmetic cannot flap across the threshold.
inline constexpr double kEpsilonSlack = 1e-12;

// The learner's prediction object: a normalized distribution over an active
// pool of hypotheses. Pool entries are distinct row indices in insertion
// order.
struct HypothesisMixture {
  std::vector<int> pool;
  std::vector<double> weights;

  void validate(const FiniteConceptClass& cls) const;
  static HypothesisMixture uniform_over(std::vector<int> pool);
};

enum class LearnerMode { proper, improper };

struct LearnerConfig {
  double epsilon = 0.5;      // in (0, 1/2]; improper mode pins 1/2
  double alpha = 0.25;       // in (0, epsilon)
  LearnerMode mode = LearnerMode::improper;
  double mw_constant = 8.0;  // C in T_j = ceil(C log|H_j| / alpha^2)
  TieBreak tie = TieBreak::lowest;

  void validate() const;
  // The threshold actually compared against; improper mode pins 1/2 so a
  // majority-vote mistake coincides with an epsilon-mistake.
  double effective_epsilon() const {
    return mode == LearnerMode::improper ? 0.5 : epsilon;
  }
};

// Per-phase bookkeeping for the lazy multiplicative-weights run.
struct PhaseState {
  int phase_index = 1;
  int pool_size = 1;
  int update_count = 0;    // k
  long update_budget = 1;  // T_j, floored at 1 so single-hypothesis phases end
  double eta = 0.0;

  static PhaseState start(int phase_index, int pool_size,
                          const LearnerConfig& config);
  bool done() const { return update_count >= update_budget; }
};

// Pr_{h~mixture}[h(x) != y]; linear in the weights for 0/1 labels.
double mixture_loss(const FiniteConceptClass& cls, const HypothesisMixture& mix,
                    const LabeledExample& ex);

// Maj(mixture, x): 1 iff Pr[h(x)=1] >= 1/2 (ties predict 1).
int improper_predict(const FiniteConceptClass& cls,
                     const HypothesisMixture& mix, int x);

struct LazyMwStep {
  HypothesisMixture mixture;
  PhaseState state;
  RoundRecord record;  // round/phase fields left for the driver
  bool phase_done = false;
};

// One round of Lazy Multiplicative Weights: below the epsilon threshold the
// mixture is returned untouched; at or above it every weight is scaled by
// exp(-eta * |h(x) - y|) and the update counter advances.
LazyMwStep lazy_mw_round(const FiniteConceptClass& cls, const PhaseState& state,
                         const HypothesisMixture& mix, const LabeledExample& ex,
                         const LearnerConfig& config);

// Adaptive example source. `next` sees the learner's current mixture, which
// is what an adaptive adversary gets to react to.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual LabeledExample next(const FiniteConceptClass& cls,
                              const HypothesisMixture& mix, long round) = 0;
};

// Cycles through a fixed example list.
class ReplayAdversary : public Adversary {
 public:
  explicit ReplayAdversary(std::vector<LabeledExample> examples);
  LabeledExample next(const FiniteConceptClass&, const HypothesisMixture&,
                      long round) override;

 private:
  std::vector<LabeledExample> examples_;
};

// Uniformly random domain point labeled by h*.
class RandomAdversary : public Adversary {
 public:
  RandomAdversary(int hstar, std::uint64_t seed) : hstar_(hstar), rng_(seed) {}
  LabeledExample next(const FiniteConceptClass& cls, const HypothesisMixture&,
                      long round) override;

 private:
  int hstar_;
  SplitMix64 rng_;
};

// Plays the point where the current mixture errs the most against h*,
// labeled by h*. Ties go to the lowest domain index.
class GreedyAdversary : public Adversary {
 public:
  explicit GreedyAdversary(int hstar) : hstar_(hstar) {}
  LabeledExample next(const FiniteConceptClass& cls, const HypothesisMixture& mix,
                      long round) override;

 private:
  int hstar_;
};

// Online Action Insertion: runs phases of Lazy Multiplicative Weights until
// `rounds` examples have been consumed; every completed phase appends the
// consistent-oracle output (duplicates skipped) and restarts uniform.
// Throws not_realizable_error if the consistent oracle ever comes up empty.
SolveTranscript run_realizable(const FiniteConceptClass& cls, Adversary& adversary,
                               long rounds, const LearnerConfig& config);
SolveTranscript run_realizable(const FiniteConceptClass& cls,
                               std::span<const LabeledExample> stream,
                               const LearnerConfig& config);

struct AgnosticRun {
  SolveTranscript transcript;
  long n_experts = 0;
  double master_loss = 0.0;               // sum over rounds of mu_t . loss_t
  std::vector<double> expert_total_losses;
  std::vector<std::vector<int>> expert_flip_sets;
  double mw_eta = 0.0;
};

// Experts reduction from the agnostic to the realizable setting: one expert
// per subset S of [T] with |S| <= max_flips; expert S simulates the
// realizable learner, flips its prediction at rounds in S, and feeds its own
// output back as the label. Multiplicative Weights arbitrates.
AgnosticRun run_agnostic(const FiniteConceptClass& cls,
                         std::span<const LabeledExample> stream, long horizon,
                         int max_flips, const LearnerConfig& config,
                         const Caps& caps = Caps::from_env());

}  // namespace og

#endif  // OG_ONLINE_HPP
