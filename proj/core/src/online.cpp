#include "og/online.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "og/mw.hpp"

namespace og {

void HypothesisMixture::validate(const FiniteConceptClass& cls) const {
  if (pool.empty()) throw input_error("mixture pool is empty");
  if (pool.size() != weights.size())
    throw input_error("mixture pool/weights length mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw input_error("mixture weight is negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw input_error("mixture weights do not sum to 1");
  std::vector<int> sorted = pool;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw input_error("mixture pool has duplicate entries");
  for (int h : pool) cls.check_hypothesis(HypothesisId{h});
}

HypothesisMixture HypothesisMixture::uniform_over(std::vector<int> pool) {
  HypothesisMixture m;
  m.weights.assign(pool.size(), 1.0 / double(pool.size()));
  m.pool = std::move(pool);
  return m;
}

void LearnerConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    throw input_error("epsilon must lie in (0, 1/2]");
  if (!(alpha > 0.0 && alpha < effective_epsilon()))
    throw input_error("alpha must lie in (0, epsilon)");
  if (!(mw_constant > 0.0)) throw input_error("mw_constant must be positive");
}

PhaseState PhaseState::start(int phase_index, int pool_size,
                             const LearnerConfig& config) {
  PhaseState s;
  s.phase_index = phase_index;
  s.pool_size = pool_size;
  s.update_count = 0;
  const double log_pool = std::log(double(pool_size));
  s.update_budget = std::max<long>(
      1, long(std::ceil(config.mw_constant * log_pool /
                        (config.alpha * config.alpha))));
  s.eta = pool_size >= 2 ? std::sqrt(log_pool / (2.0 * double(s.update_budget)))
                         : 0.0;
  return s;
}

double mixture_loss(const FiniteConceptClass& cls, const HypothesisMixture& mix,
                    const LabeledExample& ex) {
  cls.check_domain_index(ex.x);
  double loss = 0.0;
  for (std::size_t i = 0; i < mix.pool.size(); ++i)
    if (cls.at(mix.pool[i], ex.x) != ex.y) loss += mix.weights[i];
  return loss;
}

int improper_predict(const FiniteConceptClass& cls, const HypothesisMixture& mix,
                     int x) {
  if (cls.label_kind() != LabelKind::binary)
    throw input_error("improper prediction requires a binary class");
  cls.check_domain_index(x);
  double mass_one = 0.0;
  for (std::size_t i = 0; i < mix.pool.size(); ++i)
    if (cls.at(mix.pool[i], x) == 1.0) mass_one += mix.weights[i];
  return mass_one >= 0.5 ? 1 : 0;
}

LazyMwStep lazy_mw_round(const FiniteConceptClass& cls, const PhaseState& state,
                         const HypothesisMixture& mix, const LabeledExample& ex,
                         const LearnerConfig& config) {
  if (state.done()) throw input_error("lazy_mw_round called on a finished phase");

  LazyMwStep step;
  step.state = state;
  step.record.x = ex.x;
  step.record.y = ex.y;
  step.record.pool_size = int(mix.pool.size());
  step.record.mixture_loss = mixture_loss(cls, mix, ex);
  step.record.prediction = improper_predict(cls, mix, ex.x);
  step.record.update =
      step.record.mixture_loss >= config.effective_epsilon() - kEpsilonSlack;
  if (config.mode == LearnerMode::improper)
    step.record.mistake = double(step.record.prediction) != ex.y;
  else
    step.record.mistake = step.record.update;  // proper: epsilon-mistake rounds

  if (!step.record.update) {
    step.mixture = mix;  // lazy branch: the object is untouched
    step.phase_done = false;
    return step;
  }

  step.mixture = mix;
  std::vector<double> losses(mix.pool.size());
  for (std::size_t i = 0; i < mix.pool.size(); ++i)
    losses[i] = std::abs(cls.at(mix.pool[i], ex.x) - ex.y);
  mw_exponential_update(step.mixture.weights, losses, state.eta);
  step.state.update_count += 1;
  step.phase_done = step.state.done();
  return step;
}

ReplayAdversary::ReplayAdversary(std::vector<LabeledExample> examples)
    : examples_(std::move(examples)) {
  if (examples_.empty()) throw input_error("replay adversary needs examples");
}

LabeledExample ReplayAdversary::next(const FiniteConceptClass&,
                                     const HypothesisMixture&, long round) {
  return examples_[std::size_t(round - 1) % examples_.size()];
}

LabeledExample RandomAdversary::next(const FiniteConceptClass& cls,
                                     const HypothesisMixture&, long) {
  int x = int(rng_.next_below(std::uint64_t(cls.domain_size())));
  return {x, cls.at(hstar_, x)};
}

LabeledExample GreedyAdversary::next(const FiniteConceptClass& cls,
                                     const HypothesisMixture& mix, long) {
  int best_x = 0;
  double best_loss = -1.0;
  for (int x = 0; x < cls.domain_size(); ++x) {
    LabeledExample ex{x, cls.at(hstar_, x)};
    double loss = mixture_loss(cls, mix, ex);
    if (loss > best_loss) {
      best_loss = loss;
      best_x = x;
    }
  }
  return {best_x, cls.at(hstar_, best_x)};
}

namespace {

std::string config_echo(const LearnerConfig& c) {
  std::ostringstream os;
  os << "epsilon=" << c.effective_epsilon() << " alpha=" << c.alpha
     << " mode=" << (c.mode == LearnerMode::improper ? "improper" : "proper")
     << " C=" << c.mw_constant
     << " tie=" << (c.tie == TieBreak::lowest ? "lowest" : "highest");
  return os.str();
}

}  // namespace

SolveTranscript run_realizable(const FiniteConceptClass& cls,
                               Adversary& adversary, long rounds,
                               const LearnerConfig& config) {
  config.validate();
  if (cls.label_kind() != LabelKind::binary)
    throw input_error("the realizable learner requires a binary class");

  SolveTranscript transcript;
  transcript.kind = RunKind::learn;
  transcript.config_echo = config_echo(config);

  std::vector<int> pool{config.tie == TieBreak::lowest ? 0 : cls.size() - 1};
  transcript.initial_hypothesis = pool.front();
  HypothesisMixture mix = HypothesisMixture::uniform_over(pool);
  PhaseState state = PhaseState::start(1, int(pool.size()), config);
  std::vector<LabeledExample> observed;
  observed.reserve(std::size_t(rounds));

  for (long t = 1; t <= rounds; ++t) {
    LabeledExample ex = adversary.next(cls, mix, t);
    cls.check_domain_index(ex.x);
    LazyMwStep step = lazy_mw_round(cls, state, mix, ex, config);
    mix = std::move(step.mixture);
    state = step.state;
    step.record.round = t;
    step.record.phase = state.phase_index;
    transcript.rounds.push_back(step.record);
    observed.push_back(ex);

    if (step.phase_done) {
      transcript.log_oracle_call(OracleKind::consistent, t);
      auto h = consistent_oracle(cls, observed, config.tie);
      if (!h)
        throw not_realizable_error(
            "stream not realizable: consistent oracle empty at round " +
                std::to_string(t),
            t);
      if (std::find(pool.begin(), pool.end(), h->index) == pool.end()) {
        pool.push_back(h->index);
        transcript.phase_insertions.push_back(h->index);
      } else {
        transcript.phase_insertions.push_back(-1);
      }
      transcript.phase_end_rounds.push_back(t);
      mix = HypothesisMixture::uniform_over(pool);
      state = PhaseState::start(state.phase_index + 1, int(pool.size()), config);
    }
  }
  return transcript;
}

SolveTranscript run_realizable(const FiniteConceptClass& cls,
                               std::span<const LabeledExample> stream,
                               const LearnerConfig& config) {
  ReplayAdversary adversary(
      std::vector<LabeledExample>(stream.begin(), stream.end()));
  return run_realizable(cls, adversary, long(stream.size()), config);
}

namespace {

// An expert's private copy of the realizable learner, driven by self-fed
// labels. Falls back to the ERM minimizer when the fed stream stops being
// realizable, which non-optimal flip sets routinely cause.
class SimulatedLearner {
 public:
  SimulatedLearner(const FiniteConceptClass& cls, const LearnerConfig& config)
      : cls_(cls),
        config_(config),
        pool_{config.tie == TieBreak::lowest ? 0 : cls.size() - 1},
        mix_(HypothesisMixture::uniform_over(pool_)),
        state_(PhaseState::start(1, 1, config)) {}

  int predict(int x) const { return improper_predict(cls_, mix_, x); }

  void feed(const LabeledExample& ex, SolveTranscript* transcript, long round) {
    LazyMwStep step = lazy_mw_round(cls_, state_, mix_, ex, config_);
    mix_ = std::move(step.mixture);
    state_ = step.state;
    observed_.push_back(ex);
    if (!step.phase_done) return;

    if (transcript) transcript->log_oracle_call(OracleKind::consistent, round);
    auto h = consistent_oracle(cls_, observed_, config_.tie);
    if (!h) {
      if (transcript) transcript->log_oracle_call(OracleKind::erm, round);
      h = erm_oracle(cls_, observed_, 0.0, config_.tie);
    }
    if (std::find(pool_.begin(), pool_.end(), h->index) == pool_.end())
      pool_.push_back(h->index);
    mix_ = HypothesisMixture::uniform_over(pool_);
    state_ = PhaseState::start(state_.phase_index + 1, int(pool_.size()), config_);
  }

 private:
  const FiniteConceptClass& cls_;
  LearnerConfig config_;
  std::vector<int> pool_;
  HypothesisMixture mix_;
  PhaseState state_;
  std::vector<LabeledExample> observed_;
};

void enumerate_flip_sets(long horizon, int max_flips,
                         std::vector<std::vector<int>>& out) {
  out.push_back({});  // the un-flipped learner
  std::vector<int> cur;
  // Subsets by size, lexicographic within a size: deterministic expert order.
  for (int size = 1; size <= max_flips; ++size) {
    cur.assign(std::size_t(size), 0);
    for (int i = 0; i < size; ++i) cur[std::size_t(i)] = i;
    while (true) {
      out.push_back(cur);
      int i = size - 1;
      while (i >= 0 && cur[std::size_t(i)] == horizon - size + i) --i;
      if (i < 0) break;
      ++cur[std::size_t(i)];
      for (int j = i + 1; j < size; ++j)
        cur[std::size_t(j)] = cur[std::size_t(j - 1)] + 1;
    }
  }
}

}  // namespace

AgnosticRun run_agnostic(const FiniteConceptClass& cls,
                         std::span<const LabeledExample> stream, long horizon,
                         int max_flips, const LearnerConfig& config,
                         const Caps& caps) {
  config.validate();
  if (horizon < 1) throw input_error("horizon must be at least 1");
  if (horizon > caps.agnostic_horizon_cap)
    throw cap_error("agnostic horizon " + std::to_string(horizon) +
                    " exceeds cap " + std::to_string(caps.agnostic_horizon_cap) +
                    "; the expert count is exponential by design");
  if (max_flips < 0 || max_flips > caps.agnostic_flip_cap)
    throw cap_error("flip budget " + std::to_string(max_flips) +
                    " exceeds cap " + std::to_string(caps.agnostic_flip_cap));
  if (long(stream.size()) < horizon)
    throw input_error("stream shorter than the horizon");

  AgnosticRun run;
  run.transcript.kind = RunKind::learn;
  run.transcript.config_echo =
      config_echo(config) + " horizon=" + std::to_string(horizon) +
      " max_flips=" + std::to_string(max_flips);

  enumerate_flip_sets(horizon, max_flips, run.expert_flip_sets);
  const long n = long(run.expert_flip_sets.size());
  run.n_experts = n;

  std::vector<SimulatedLearner> learners;
  learners.reserve(std::size_t(n));
  for (long i = 0; i < n; ++i) learners.emplace_back(cls, config);

  run.mw_eta = mw_learning_rate(int(n), horizon);
  MwLearner master(int(n), run.mw_eta);
  std::vector<double> losses(static_cast<std::size_t>(n));

  for (long t = 1; t <= horizon; ++t) {
    const LabeledExample& ex = stream[std::size_t(t - 1)];
    cls.check_domain_index(ex.x);
    double weighted_one = 0.0;
    for (long i = 0; i < n; ++i) {
      auto& flips = run.expert_flip_sets[std::size_t(i)];
      int yhat = learners[std::size_t(i)].predict(ex.x);
      bool flip = std::find(flips.begin(), flips.end(), int(t - 1)) != flips.end();
      int prediction = flip ? 1 - yhat : yhat;
      losses[std::size_t(i)] = double(prediction) != ex.y ? 1.0 : 0.0;
      weighted_one += master.weights()[std::size_t(i)] * prediction;
      learners[std::size_t(i)].feed({ex.x, double(prediction)}, &run.transcript, t);
    }

    RoundRecord rec;
    rec.round = t;
    rec.phase = 1;
    rec.x = ex.x;
    rec.y = ex.y;
    rec.prediction = weighted_one >= 0.5 ? 1 : 0;
    rec.mistake = double(rec.prediction) != ex.y;
    rec.update = true;
    rec.pool_size = int(n);
    rec.mixture_loss = master.observe(losses);
    run.transcript.rounds.push_back(rec);
  }

  run.master_loss = master.master_loss();
  run.expert_total_losses = master.cumulative_losses();
  return run;
}

}  // namespace og
