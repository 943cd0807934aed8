#include "og/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "og/mw.hpp"

namespace og {

namespace {

long half_infinite_horizon(std::size_t n_finite, double eps) {
  return long(std::ceil(16.0 * std::log(double(n_finite) + 1.0) / (eps * eps)));
}

MixedStrategy average_mixture(std::span<const ActionId> actions,
                              std::span<const double> weight_sums, long rounds) {
  MixedStrategy s;
  s.support.assign(actions.begin(), actions.end());
  s.probs.resize(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i)
    s.probs[i] = weight_sums[i] / double(rounds);
  return s;
}

MixedStrategy empirical_distribution(const std::vector<ActionId>& plays) {
  std::map<ActionId, long> counts;
  for (ActionId a : plays) ++counts[a];
  MixedStrategy s;
  for (const auto& [a, c] : counts) {
    s.support.push_back(a);
    s.probs.push_back(double(c) / double(plays.size()));
  }
  return s;
}

}  // namespace

HalfInfiniteResult nash_half_infinite(const ZeroSumGame& game,
                                      std::span<const ActionId> finite_actions,
                                      int finite_player,
                                      const BestResponseFn& oracle, double eps,
                                      SolveTranscript* transcript,
                                      long at_iteration) {
  if (finite_actions.empty())
    throw input_error("nash_half_infinite: empty finite side");
  if (!(eps > 0.0)) throw input_error("nash_half_infinite: eps must be positive");
  if (finite_player != 1 && finite_player != 2)
    throw input_error("finite_player must be 1 or 2");

  const int n = int(finite_actions.size());
  const long horizon = half_infinite_horizon(std::size_t(n), eps);
  const double width = game.value_hi - game.value_lo;
  if (width <= 0.0) throw input_error("degenerate game value range");

  MwLearner learner(n, mw_learning_rate(n, horizon));
  std::vector<double> mix_sum(std::size_t(n), 0.0);
  std::vector<double> losses(static_cast<std::size_t>(n));
  std::vector<ActionId> responses;
  responses.reserve(std::size_t(horizon));

  HalfInfiniteResult result;
  result.rounds = horizon;

  for (long t = 1; t <= horizon; ++t) {
    const auto& mu = learner.weights();
    for (int i = 0; i < n; ++i) mix_sum[std::size_t(i)] += mu[std::size_t(i)];

    // Best response to the uniform mixture of mu^1..mu^t.
    MixedStrategy avg = average_mixture(finite_actions, mix_sum, t);
    ActionId b = oracle(avg, eps);
    responses.push_back(b);
    ++result.oracle_calls;
    if (transcript)
      transcript->log_oracle_call(OracleKind::best_response, at_iteration);

    // Normalized losses: the minimizer pays the payoff, the maximizer its
    // complement.
    for (int i = 0; i < n; ++i) {
      ActionId a = finite_actions[std::size_t(i)];
      double u = finite_player == 1 ? game.u(a, b) : game.u(b, a);
      double norm = (u - game.value_lo) / width;
      losses[std::size_t(i)] = finite_player == 1 ? norm : 1.0 - norm;
    }
    learner.observe(losses);
  }

  result.mw_regret = learner.regret();
  result.mw_regret_bound =
      2.0 * std::sqrt(double(horizon) * std::log(double(n)));

  result.finite_side = average_mixture(finite_actions, mix_sum, horizon);
  result.oracle_side = empirical_distribution(responses);
  return result;
}

HalfInfiniteResult nash_half_infinite(const ZeroSumGame& game,
                                      std::span<const ActionId> finite_side,
                                      const BestResponseFn& player2_oracle,
                                      double eps) {
  return nash_half_infinite(game, finite_side, 1, player2_oracle, eps);
}

ZeroSumOracles tensor_oracles(const ZeroSumGame& game) {
  if (game.row_universe.empty() || game.col_universe.empty())
    throw input_error("tensor_oracles needs explicit action universes");
  ZeroSumOracles o;
  o.player1 = [&game](const MixedStrategy& opp, double eps) {
    return best_response(game, 1, opp, game.row_universe, eps);
  };
  o.player2 = [&game](const MixedStrategy& opp, double eps) {
    return best_response(game, 2, opp, game.col_universe, eps);
  };
  o.seed_a = *std::min_element(game.row_universe.begin(), game.row_universe.end());
  o.seed_b = *std::min_element(game.col_universe.begin(), game.col_universe.end());
  return o;
}

namespace {

void merge_support(std::vector<ActionId>& set, const MixedStrategy& strategy) {
  for (ActionId a : strategy.support)
    if (std::find(set.begin(), set.end(), a) == set.end()) set.push_back(a);
}

std::string solver_config_echo(const char* kind, double eps, double val_tol,
                               std::uint64_t seed) {
  std::ostringstream os;
  os << "kind=" << kind << " eps=" << eps << " val_tol=" << val_tol
     << " seed=" << seed;
  return os.str();
}

}  // namespace

SolveResult nash_zero_sum(const ZeroSumGame& game, const ZeroSumOracles& oracles,
                          double eps, double val_tol, std::uint64_t seed,
                          const Caps& caps) {
  if (!(eps > 0.0)) throw input_error("eps must be positive");
  if (!(val_tol > 0.0 && val_tol <= eps / 10.0 + 1e-15))
    throw input_error("val_tol must be positive and at most eps/10");

  SolveResult result;
  result.transcript.kind = RunKind::zero_sum;
  result.transcript.seed = seed;
  result.transcript.config_echo = solver_config_echo("zero-sum", eps, val_tol, seed);

  std::vector<ActionId> a_set{oracles.seed_a};
  std::vector<ActionId> b_set{oracles.seed_b};

  double val_prev_prev = finite_value(game, a_set, b_set, val_tol);

  for (long t = 1; t <= caps.solver_iteration_cap; ++t) {
    // Player 1 improves against the frozen B: Nash(A_full, B_{t-1}).
    HalfInfiniteResult first =
        nash_half_infinite(game, b_set, 2, oracles.player1, eps,
                           &result.transcript, t);
    const MixedStrategy& mu2 = first.finite_side;  // avg MW mixture over B
    merge_support(a_set, first.oracle_side);       // BR actions joined A

    double val_ab_prev = finite_value(game, a_set, b_set, val_tol);

    // Player 2 improves against the frozen, just-grown A: Nash(A_t, B_full).
    HalfInfiniteResult second =
        nash_half_infinite(game, a_set, 1, oracles.player2, eps,
                           &result.transcript, t);
    const MixedStrategy& xi1 = second.finite_side;  // avg MW mixture over A
    merge_support(b_set, second.oracle_side);

    double val_ab = finite_value(game, a_set, b_set, val_tol);

    IterationRecord rec;
    rec.iteration = t;
    rec.size_a = int(a_set.size());
    rec.size_b = int(b_set.size());
    rec.val_ab_prev = val_ab_prev;
    rec.val_ab = val_ab;
    rec.oracle_calls = result.transcript.count(OracleKind::best_response);
    result.transcript.iterations.push_back(rec);

    // Stopping thresholds widened by 2*val_tol: an exact-arithmetic stop can
    // never be missed because of Val approximation. The first branch compares
    // against B_{t-1}, whose guarantee only exists once iteration t-1 actually
    // grew it, so it stays off at t = 1 (the seed action set carries no
    // best-response guarantee).
    const bool no_gain_for_1 =
        t >= 2 && val_ab_prev >= val_prev_prev - eps - 2.0 * val_tol;
    const bool no_gain_for_2 = val_ab <= val_ab_prev + eps + 2.0 * val_tol;
    if (no_gain_for_1 || no_gain_for_2) {
      EquilibriumCertificate cert;
      cert.kind = "zero-sum";
      cert.eps = eps;
      cert.val_tol = val_tol;
      cert.claimed_epsilon = 5.0 * eps + 3.0 * val_tol;
      cert.seed = seed;
      cert.strategy1 = xi1;
      cert.strategy2 = mu2;
      cert.value = expected_utility(game, xi1, mu2);
      cert.iterations = t;
      cert.oracle_calls = result.transcript.count(OracleKind::best_response);
      result.certificate = std::move(cert);
      return result;
    }
    val_prev_prev = val_ab;
  }
  throw iteration_cap_error(
      "nash_zero_sum: iteration cap " +
          std::to_string(caps.solver_iteration_cap) + " exceeded",
      std::move(result.transcript));
}

JointDistribution finite_cce(const MultiPlayerGame& game,
                             const std::vector<std::vector<ActionId>>& supports,
                             double eps, SplitMix64& rng, CceMode mode) {
  const int k = game.players();
  if (int(supports.size()) != k)
    throw input_error("finite_cce: need one support per player");
  std::size_t max_support = 0;
  for (const auto& s : supports) {
    if (s.empty()) throw input_error("finite_cce: empty player support");
    max_support = std::max(max_support, s.size());
  }
  const long horizon =
      long(std::ceil(16.0 * std::log(double(max_support) + 1.0) / (eps * eps)));

  std::vector<MwLearner> learners;
  learners.reserve(std::size_t(k));
  for (int p = 0; p < k; ++p)
    learners.emplace_back(int(supports[std::size_t(p)].size()),
                          mw_learning_rate(int(supports[std::size_t(p)].size()), horizon));

  std::vector<SplitMix64> player_rngs;
  for (int p = 0; p < k; ++p) player_rngs.push_back(rng.split());

  std::map<Profile, double> accumulated;

  if (mode == CceMode::sampled) {
    Profile realized(static_cast<std::size_t>(k));
    for (long t = 1; t <= horizon; ++t) {
      for (int p = 0; p < k; ++p) {
        std::size_t i =
            player_rngs[std::size_t(p)].sample_index(learners[std::size_t(p)].weights());
        realized[std::size_t(p)] = supports[std::size_t(p)][i];
      }
      accumulated[realized] += 1.0 / double(horizon);
      for (int p = 0; p < k; ++p) {
        const auto& own = supports[std::size_t(p)];
        std::vector<double> losses(own.size());
        Profile probe = realized;
        for (std::size_t i = 0; i < own.size(); ++i) {
          probe[std::size_t(p)] = own[i];
          losses[i] = 1.0 - game.utility(p, probe);
        }
        learners[std::size_t(p)].observe(losses);
      }
    }
  } else {
    // Expectation-exact: accumulate the product of the players' mixtures and
    // feed expected losses.
    std::vector<std::size_t> idx(std::size_t(k), 0);
    for (long t = 1; t <= horizon; ++t) {
      // Enumerate the product support once per round (desk-scale supports).
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        Profile a(static_cast<std::size_t>(k));
        double prob = 1.0;
        for (int p = 0; p < k; ++p) {
          a[std::size_t(p)] = supports[std::size_t(p)][idx[std::size_t(p)]];
          prob *= learners[std::size_t(p)].weights()[idx[std::size_t(p)]];
        }
        if (prob > 0.0) accumulated[a] += prob / double(horizon);
        int p = k - 1;
        while (p >= 0 && ++idx[std::size_t(p)] == supports[std::size_t(p)].size()) {
          idx[std::size_t(p)] = 0;
          --p;
        }
        if (p < 0) break;
      }
      for (int p = 0; p < k; ++p) {
        const auto& own = supports[std::size_t(p)];
        std::vector<double> losses(own.size(), 0.0);
        // E over the other players' mixtures of 1 - u_p.
        std::vector<std::size_t> oidx(std::size_t(k), 0);
        while (true) {
          Profile a(static_cast<std::size_t>(k));
          double prob = 1.0;
          for (int q = 0; q < k; ++q) {
            a[std::size_t(q)] = supports[std::size_t(q)][oidx[std::size_t(q)]];
            if (q != p) prob *= learners[std::size_t(q)].weights()[oidx[std::size_t(q)]];
          }
          if (prob > 0.0)
            losses[oidx[std::size_t(p)]] += prob * (1.0 - game.utility(p, a));
          int q = k - 1;
          while (q >= 0 && ++oidx[std::size_t(q)] == supports[std::size_t(q)].size()) {
            oidx[std::size_t(q)] = 0;
            --q;
          }
          if (q < 0) break;
        }
        learners[std::size_t(p)].observe(losses);
      }
    }
  }

  JointDistribution joint;
  for (const auto& [profile, prob] : accumulated) {
    joint.support.push_back(profile);
    joint.probs.push_back(prob);
  }
  return joint;
}

BestDeviation best_deviation(const MultiPlayerGame& game,
                             const JointDistribution& joint, double eps,
                             SolveTranscript* transcript, long at_iteration) {
  joint.validate(game.players());
  BestDeviation best;
  bool first = true;
  for (int p = 0; p < game.players(); ++p) {
    JointDistribution marginal = marginalize_out(joint, p, game.players());
    ActionId d = best_response(game, p, marginal, game.universe(p), eps);
    if (transcript)
      transcript->log_oracle_call(OracleKind::best_response, at_iteration);

    double stay = 0.0;
    for (std::size_t i = 0; i < joint.support.size(); ++i)
      stay += joint.probs[i] * game.utility(p, joint.support[i]);
    double deviate = 0.0;
    for (std::size_t i = 0; i < marginal.support.size(); ++i)
      deviate += marginal.probs[i] *
                 game.utility(p, with_player_action(marginal.support[i], p, d));

    double gain = deviate - stay;
    if (first || gain > best.gain) {
      best = {p, d, gain};
      first = false;
    }
  }
  return best;
}

SolveResult cce_multiplayer(const MultiPlayerGame& game, double eps,
                            double val_tol, std::uint64_t seed, CceMode mode,
                            const Caps& caps) {
  if (!(eps > 0.0)) throw input_error("eps must be positive");
  if (!(val_tol > 0.0 && val_tol <= eps / 10.0 + 1e-15))
    throw input_error("val_tol must be positive and at most eps/10");

  SolveResult result;
  result.transcript.kind = RunKind::cce;
  result.transcript.seed = seed;
  result.transcript.config_echo = solver_config_echo("cce", eps, val_tol, seed);

  SplitMix64 rng(seed);
  CceMatrixView view(game);
  ZeroSumGame cce_game = view.as_zero_sum();

  // B_0: one arbitrary (lowest) tagged deviation per player; A_0 is empty
  // and fills from the first finite-subgame CCE.
  std::vector<ActionId> b_cols;
  for (int p = 0; p < game.players(); ++p)
    b_cols.push_back(view.column_token(p, game.universe(p).front()));
  std::vector<ActionId> a_rows;

  const BestResponseFn deviation_oracle = [&](const MixedStrategy& mu,
                                              double e) -> ActionId {
    JointDistribution joint;
    for (std::size_t i = 0; i < mu.support.size(); ++i) {
      joint.support.push_back(view.profile(mu.support[i]));
      joint.probs.push_back(mu.probs[i]);
    }
    BestDeviation dev = best_deviation(game, joint, e, &result.transcript,
                                       long(result.transcript.iterations.size()) + 1);
    return view.column_token(dev.player, dev.action);
  };

  for (long t = 1; t <= caps.solver_iteration_cap; ++t) {
    // Grow the profile side from a CCE of the subgame spanned by B_{t-1}.
    std::vector<std::vector<ActionId>> supports(static_cast<std::size_t>(game.players()));
    for (ActionId col : b_cols) {
      auto [p, d] = view.column(col);
      auto& s = supports[std::size_t(p)];
      if (std::find(s.begin(), s.end(), d) == s.end()) s.push_back(d);
    }
    for (auto& s : supports) std::sort(s.begin(), s.end());

    SplitMix64 iteration_rng = rng.split();
    JointDistribution subgame_cce =
        finite_cce(game, supports, eps, iteration_rng, mode);
    for (const Profile& a : subgame_cce.support) {
      ActionId row = view.intern_profile(a);
      if (std::find(a_rows.begin(), a_rows.end(), row) == a_rows.end())
        a_rows.push_back(row);
    }

    double val_ab_prev = finite_value(cce_game, a_rows, b_cols, val_tol);

    // Deviation player improves against the frozen profile support.
    HalfInfiniteResult half = nash_half_infinite(
        cce_game, a_rows, 1, deviation_oracle, eps, nullptr, t);
    merge_support(b_cols, half.oracle_side);
    // The transcript already logged each inner best-response call.

    double val_ab = finite_value(cce_game, a_rows, b_cols, val_tol);

    IterationRecord rec;
    rec.iteration = t;
    rec.size_a = int(a_rows.size());
    rec.size_b = int(b_cols.size());
    rec.val_ab_prev = val_ab_prev;
    rec.val_ab = val_ab;
    rec.oracle_calls = result.transcript.count(OracleKind::best_response);
    result.transcript.iterations.push_back(rec);

    if (val_ab <= 3.0 * eps + 2.0 * val_tol) {
      EquilibriumCertificate cert;
      cert.kind = "cce";
      cert.eps = eps;
      cert.val_tol = val_tol;
      cert.claimed_epsilon = 5.0 * eps + 3.0 * val_tol;
      cert.seed = seed;
      for (std::size_t i = 0; i < half.finite_side.support.size(); ++i) {
        if (half.finite_side.probs[i] <= 0.0) continue;
        cert.joint.support.push_back(view.profile(half.finite_side.support[i]));
        cert.joint.probs.push_back(half.finite_side.probs[i]);
      }
      cert.value = val_ab;
      cert.iterations = t;
      cert.oracle_calls = result.transcript.count(OracleKind::best_response);
      result.certificate = std::move(cert);
      return result;
    }
  }
  throw iteration_cap_error(
      "cce_multiplayer: iteration cap " +
          std::to_string(caps.solver_iteration_cap) + " exceeded",
      std::move(result.transcript));
}

}  // namespace og
