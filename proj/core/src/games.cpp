#include "og/games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "og/mw.hpp"

namespace og {

void MixedStrategy::validate() const {
  if (support.empty()) throw input_error("mixed strategy has empty support");
  if (support.size() != probs.size())
    throw input_error("mixed strategy support/probs length mismatch");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw input_error("mixed strategy probability is negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw input_error("mixed strategy probabilities do not sum to 1");
  std::set<ActionId> seen(support.begin(), support.end());
  if (seen.size() != support.size())
    throw input_error("mixed strategy support has duplicates");
}

double MixedStrategy::prob_of(ActionId a) const {
  for (std::size_t i = 0; i < support.size(); ++i)
    if (support[i] == a) return probs[i];
  return 0.0;
}

void JointDistribution::validate(int players) const {
  if (support.empty()) throw input_error("joint distribution has empty support");
  if (support.size() != probs.size())
    throw input_error("joint distribution support/probs length mismatch");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw input_error("joint probability is negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw input_error("joint probabilities do not sum to 1");
  for (const auto& a : support)
    if (int(a.size()) != players)
      throw input_error("profile arity does not match player count");
}

double ZeroSumGame::u(ActionId a, ActionId b) const {
  double v = utility(a, b);
  if (!(v >= value_lo - 1e-9 && v <= value_hi + 1e-9))
    throw input_error("utility outside its declared range");
  return v;
}

ZeroSumGame ZeroSumGame::from_matrix(RealMatrix matrix) {
  matrix.validate_unit_range();
  auto shared = std::make_shared<RealMatrix>(std::move(matrix));
  ZeroSumGame g;
  g.utility = [shared](ActionId a, ActionId b) {
    if (a < 0 || a >= shared->rows || b < 0 || b >= shared->cols)
      throw input_error("action token outside the tensor universe");
    return shared->at(int(a), int(b));
  };
  g.row_universe.resize(std::size_t(shared->rows));
  g.col_universe.resize(std::size_t(shared->cols));
  for (int i = 0; i < shared->rows; ++i) g.row_universe[std::size_t(i)] = i;
  for (int j = 0; j < shared->cols; ++j) g.col_universe[std::size_t(j)] = j;
  return g;
}

MultiPlayerGame::MultiPlayerGame(std::vector<std::vector<ActionId>> universes,
                                 std::function<double(int, const Profile&)> utility)
    : universes_(std::move(universes)), utility_(std::move(utility)) {
  if (universes_.size() < 2) throw input_error("a game needs at least 2 players");
  for (const auto& u : universes_)
    if (u.empty()) throw input_error("a player has an empty action universe");
}

MultiPlayerGame MultiPlayerGame::from_tensors(
    std::vector<int> shape, std::vector<std::vector<double>> utilities) {
  const int k = int(shape.size());
  if (k < 2) throw input_error("a game needs at least 2 players");
  if (int(utilities.size()) != k)
    throw input_error("need one utility tensor per player");
  std::size_t cells = 1;
  for (int n : shape) {
    if (n < 1) throw input_error("every player needs at least one action");
    cells *= std::size_t(n);
  }
  for (const auto& t : utilities) {
    if (t.size() != cells) throw input_error("utility tensor size mismatch");
    for (double v : t)
      if (!(v >= 0.0 && v <= 1.0))
        throw input_error("utility outside [0,1]");
  }

  std::vector<std::vector<ActionId>> universes(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) {
    universes[std::size_t(p)].resize(std::size_t(shape[std::size_t(p)]));
    for (int a = 0; a < shape[std::size_t(p)]; ++a)
      universes[std::size_t(p)][std::size_t(a)] = a;
  }

  auto data = std::make_shared<std::vector<std::vector<double>>>(std::move(utilities));
  auto dims = std::make_shared<std::vector<int>>(std::move(shape));
  auto index_of = [dims](const Profile& a) {
    if (a.size() != dims->size()) throw input_error("profile arity mismatch");
    std::size_t idx = 0;
    for (std::size_t p = 0; p < a.size(); ++p) {
      if (a[p] < 0 || a[p] >= (*dims)[p])
        throw input_error("profile action outside the tensor universe");
      idx = idx * std::size_t((*dims)[p]) + std::size_t(a[p]);
    }
    return idx;
  };
  return MultiPlayerGame(std::move(universes),
                         [data, index_of](int p, const Profile& a) {
                           return (*data)[std::size_t(p)][index_of(a)];
                         });
}

const std::vector<ActionId>& MultiPlayerGame::universe(int p) const {
  if (p < 0 || p >= players()) throw input_error("player index out of range");
  return universes_[std::size_t(p)];
}

double MultiPlayerGame::utility(int p, const Profile& a) const {
  if (p < 0 || p >= players()) throw input_error("player index out of range");
  double v = utility_(p, a);
  if (!(v >= -1e-9 && v <= 1.0 + 1e-9))
    throw input_error("utility outside [0,1]");
  return v;
}

JointDistribution marginalize_out(const JointDistribution& joint, int p,
                                  int players) {
  joint.validate(players);
  std::map<Profile, double> acc;
  for (std::size_t i = 0; i < joint.support.size(); ++i) {
    Profile reduced = joint.support[i];
    reduced[std::size_t(p)] = 0;
    acc[reduced] += joint.probs[i];
  }
  JointDistribution out;
  for (auto& [prof, prob] : acc) {
    out.support.push_back(prof);
    out.probs.push_back(prob);
  }
  return out;
}

Profile with_player_action(Profile reduced, int p, ActionId a) {
  reduced[std::size_t(p)] = a;
  return reduced;
}

ActionId best_response(const ZeroSumGame& game, int player,
                       const MixedStrategy& opponents_mixture,
                       std::span<const ActionId> candidates, double) {
  if (candidates.empty()) throw input_error("best_response: empty candidate set");
  opponents_mixture.validate();

  if (player != 1 && player != 2)
    throw input_error("zero-sum player index must be 1 or 2");
  const double sign = player == 2 ? 1.0 : -1.0;  // player 1 minimizes u
  double best = -std::numeric_limits<double>::infinity();
  ActionId best_action = candidates.front();
  for (ActionId c : candidates) {
    double v = 0.0;
    for (std::size_t i = 0; i < opponents_mixture.support.size(); ++i) {
      ActionId o = opponents_mixture.support[i];
      double u = player == 2 ? game.u(o, c) : game.u(c, o);
      v += opponents_mixture.probs[i] * u;
    }
    v *= sign;
    if (v > best) {
      best = v;
      best_action = c;
    } else if (v == best && c < best_action) {
      best_action = c;
    }
  }
  return best_action;
}

ActionId best_response(const MultiPlayerGame& game, int p,
                       const JointDistribution& opponents,
                       std::span<const ActionId> candidates, double) {
  if (candidates.empty()) throw input_error("best_response: empty candidate set");
  double best = -std::numeric_limits<double>::infinity();
  ActionId best_action = candidates.front();
  for (ActionId c : candidates) {
    double v = 0.0;
    for (std::size_t i = 0; i < opponents.support.size(); ++i)
      v += opponents.probs[i] *
           game.utility(p, with_player_action(opponents.support[i], p, c));
    if (v > best) {
      best = v;
      best_action = c;
    } else if (v == best && c < best_action) {
      best_action = c;
    }
  }
  return best_action;
}

namespace {

// Dense payoff table of a subgame, normalized to [0,1].
struct SubgameTable {
  int m, n;
  std::vector<double> u;  // row-major, normalized
  double lo, width;

  double at(int i, int j) const { return u[std::size_t(i) * n + j]; }
  double denormalize(double v) const { return lo + v * width; }
};

SubgameTable materialize(const ZeroSumGame& game, std::span<const ActionId> rows,
                         std::span<const ActionId> cols) {
  SubgameTable t;
  t.m = int(rows.size());
  t.n = int(cols.size());
  t.lo = game.value_lo;
  t.width = game.value_hi - game.value_lo;
  if (t.width <= 0.0) throw input_error("degenerate game value range");
  t.u.resize(std::size_t(t.m) * std::size_t(t.n));
  for (int i = 0; i < t.m; ++i)
    for (int j = 0; j < t.n; ++j)
      t.u[std::size_t(i) * t.n + j] = (game.u(rows[std::size_t(i)], cols[std::size_t(j)]) - t.lo) / t.width;
  return t;
}

}  // namespace

double finite_value(const ZeroSumGame& game, std::span<const ActionId> rows,
                    std::span<const ActionId> cols, double tol) {
  if (rows.empty() || cols.empty())
    throw input_error("finite_value: empty action set");
  if (!(tol > 0.0)) throw input_error("finite_value: tol must be positive");

  // Degenerate shapes are pure min or max.
  if (rows.size() == 1) {
    double best = -std::numeric_limits<double>::infinity();
    for (ActionId b : cols) best = std::max(best, game.u(rows[0], b));
    return best;
  }
  if (cols.size() == 1) {
    double best = std::numeric_limits<double>::infinity();
    for (ActionId a : rows) best = std::min(best, game.u(a, cols[0]));
    return best;
  }

  SubgameTable t = materialize(game, rows, cols);
  const double tol_norm = tol / t.width;
  const int m = t.m, n = t.n;
  const long horizon = long(
      std::ceil(16.0 * std::log(double(std::max(m, n)) + 1.0) / (tol_norm * tol_norm)));

  MwLearner row_player(m, mw_learning_rate(m, horizon));
  MwLearner col_player(n, mw_learning_rate(n, horizon));

  std::vector<double> row_losses(static_cast<std::size_t>(m));
  std::vector<double> col_losses(static_cast<std::size_t>(n));
  std::vector<double> row_mix_sum(std::size_t(m), 0.0);
  std::vector<double> col_mix_sum(std::size_t(n), 0.0);
  double payoff_sum = 0.0;

  const long check_stride = 512;
  for (long round = 1; round <= horizon; ++round) {
    const auto& mu = row_player.weights();
    const auto& xi = col_player.weights();
    for (int i = 0; i < m; ++i) row_mix_sum[std::size_t(i)] += mu[std::size_t(i)];
    for (int j = 0; j < n; ++j) col_mix_sum[std::size_t(j)] += xi[std::size_t(j)];

    // Row player minimizes the payoff, so its loss is the payoff itself.
    double payoff = 0.0;
    for (int i = 0; i < m; ++i) {
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += t.at(i, j) * xi[std::size_t(j)];
      row_losses[std::size_t(i)] = v;
      payoff += mu[std::size_t(i)] * v;
    }
    payoff_sum += payoff;
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int i = 0; i < m; ++i) v += t.at(i, j) * mu[std::size_t(i)];
      col_losses[std::size_t(j)] = 1.0 - v;
    }
    row_player.observe(row_losses);
    col_player.observe(col_losses);

    if (round % check_stride == 0 || round == horizon) {
      // Weak duality on the average strategies certifies Val in [lb, ub].
      double ub = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int i = 0; i < m; ++i) v += t.at(i, j) * row_mix_sum[std::size_t(i)];
        ub = std::max(ub, v / double(round));
      }
      double lb = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        double v = 0.0;
        for (int j = 0; j < n; ++j) v += t.at(i, j) * col_mix_sum[std::size_t(j)];
        lb = std::min(lb, v / double(round));
      }
      if (ub - lb <= 2.0 * tol_norm) return t.denormalize((ub + lb) / 2.0);
    }
  }
  return t.denormalize(payoff_sum / double(horizon));
}

double expected_utility(const ZeroSumGame& game, const MixedStrategy& mu1,
                        const MixedStrategy& mu2) {
  mu1.validate();
  mu2.validate();
  double v = 0.0;
  for (std::size_t i = 0; i < mu1.support.size(); ++i)
    for (std::size_t j = 0; j < mu2.support.size(); ++j)
      v += mu1.probs[i] * mu2.probs[j] * game.u(mu1.support[i], mu2.support[j]);
  return v;
}

std::pair<double, double> verify_nash(const ZeroSumGame& game,
                                      const MixedStrategy& mu1,
                                      const MixedStrategy& mu2,
                                      std::span<const ActionId> row_universe,
                                      std::span<const ActionId> col_universe) {
  if (row_universe.empty() || col_universe.empty())
    throw input_error("verify_nash: empty probe universe");
  const double on_path = expected_utility(game, mu1, mu2);

  double best_row = std::numeric_limits<double>::infinity();
  for (ActionId a : row_universe) {
    double v = 0.0;
    for (std::size_t j = 0; j < mu2.support.size(); ++j)
      v += mu2.probs[j] * game.u(a, mu2.support[j]);
    best_row = std::min(best_row, v);
  }
  double best_col = -std::numeric_limits<double>::infinity();
  for (ActionId b : col_universe) {
    double v = 0.0;
    for (std::size_t i = 0; i < mu1.support.size(); ++i)
      v += mu1.probs[i] * game.u(mu1.support[i], b);
    best_col = std::max(best_col, v);
  }
  return {on_path - best_row, best_col - on_path};
}

double verify_cce(const MultiPlayerGame& game, const JointDistribution& joint) {
  joint.validate(game.players());
  double max_gain = -std::numeric_limits<double>::infinity();
  for (int p = 0; p < game.players(); ++p) {
    double stay = 0.0;
    for (std::size_t i = 0; i < joint.support.size(); ++i)
      stay += joint.probs[i] * game.utility(p, joint.support[i]);
    for (ActionId d : game.universe(p)) {
      double deviate = 0.0;
      for (std::size_t i = 0; i < joint.support.size(); ++i)
        deviate += joint.probs[i] *
                   game.utility(p, with_player_action(joint.support[i], p, d));
      max_gain = std::max(max_gain, deviate - stay);
    }
  }
  return max_gain;
}

CceMatrixView::CceMatrixView(const MultiPlayerGame& game) : game_(&game) {
  for (int p = 0; p < game.players(); ++p)
    for (ActionId d : game.universe(p)) {
      ActionId token = ActionId(deviations_.size());
      deviations_.emplace_back(p, d);
      deviation_tokens_[{p, d}] = token;
    }
}

std::pair<int, ActionId> CceMatrixView::column(ActionId col_token) const {
  if (col_token < 0 || col_token >= ActionId(deviations_.size()))
    throw input_error("deviation token out of range");
  return deviations_[std::size_t(col_token)];
}

ActionId CceMatrixView::column_token(int p, ActionId d) const {
  auto it = deviation_tokens_.find({p, d});
  if (it == deviation_tokens_.end())
    throw input_error("unknown deviation (player, action) pair");
  return it->second;
}

ActionId CceMatrixView::intern_profile(const Profile& a) {
  if (int(a.size()) != game_->players())
    throw input_error("profile arity does not match player count");
  auto it = profile_tokens_.find(a);
  if (it != profile_tokens_.end()) return it->second;
  ActionId token = ActionId(profiles_.size());
  profiles_.push_back(a);
  profile_tokens_[a] = token;
  return token;
}

const Profile& CceMatrixView::profile(ActionId row_token) const {
  if (row_token < 0 || row_token >= ActionId(profiles_.size()))
    throw input_error("profile token out of range");
  return profiles_[std::size_t(row_token)];
}

double CceMatrixView::entry(ActionId row_token, ActionId col_token) const {
  const Profile& a = profile(row_token);
  auto [p, d] = column(col_token);
  if (a[std::size_t(p)] == d) return 0.0;  // self-deviation
  return game_->utility(p, with_player_action(a, p, d)) - game_->utility(p, a);
}

ZeroSumGame CceMatrixView::as_zero_sum() const {
  ZeroSumGame g;
  g.utility = [this](ActionId row, ActionId col) { return entry(row, col); };
  g.col_universe.resize(deviations_.size());
  for (std::size_t j = 0; j < deviations_.size(); ++j)
    g.col_universe[j] = ActionId(j);
  g.row_universe.resize(profiles_.size());
  for (std::size_t i = 0; i < profiles_.size(); ++i)
    g.row_universe[i] = ActionId(i);
  g.value_lo = -1.0;
  g.value_hi = 1.0;
  return g;
}

CceMatrixView cce_matrix(const MultiPlayerGame& game) {
  return CceMatrixView(game);
}

}  // namespace og
