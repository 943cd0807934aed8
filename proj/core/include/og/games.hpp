#ifndef OG_GAMES_HPP
#define OG_GAMES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "og/dimensions.hpp"
#include "og/errors.hpp"

namespace og {

// Opaque comparable action token. Tensor-backed games use 0..n-1; callers of
// callback-backed games may use any ids. Ties always break toward the lowest
// token.
using ActionId = std::int64_t;
using Profile = std::vector<ActionId>;  // one action per player

struct MixedStrategy {
  std::vector<ActionId> support;  // distinct
  std::vector<double> probs;      // matching, sums to 1

  void validate() const;
  double prob_of(ActionId a) const;
  static MixedStrategy point_mass(ActionId a) { return {{a}, {1.0}}; }
};

// Finitely-supported distribution over full action profiles.
struct JointDistribution {
  std::vector<Profile> support;
  std::vector<double> probs;

  void validate(int players) const;
};

// Zero-sum two-player game through player 2's utility: player 1 minimizes
// u, player 2 maximizes. Tensor games carry their full action universes;
// callback games may leave either universe empty and be reached only through
// best-response oracles.
struct ZeroSumGame {
  std::function<double(ActionId, ActionId)> utility;
  std::vector<ActionId> row_universe;
  std::vector<ActionId> col_universe;
  double value_lo = 0.0;
  double value_hi = 1.0;

  double u(ActionId a, ActionId b) const;
  static ZeroSumGame from_matrix(RealMatrix matrix);
};

class MultiPlayerGame {
 public:
  MultiPlayerGame(std::vector<std::vector<ActionId>> universes,
                  std::function<double(int, const Profile&)> utility);
  // utilities[p] is a flat row-major tensor over the profile space.
  static MultiPlayerGame from_tensors(std::vector<int> shape,
                                      std::vector<std::vector<double>> utilities);

  int players() const { return int(universes_.size()); }
  const std::vector<ActionId>& universe(int p) const;
  double utility(int p, const Profile& a) const;

 private:
  std::vector<std::vector<ActionId>> universes_;
  std::function<double(int, const Profile&)> utility_;
};

// Marginal of a joint profile distribution onto everyone but player p.
// Profiles keep their full arity; slot p is zeroed so equal opponents' lines
// aggregate.
JointDistribution marginalize_out(const JointDistribution& joint, int p,
                                  int players);
Profile with_player_action(Profile reduced, int p, ActionId a);

// eps-best response by enumeration over `candidates`. For the minimizing
// side of a zero-sum game the utility is negated internally, so the same
// argmax contract serves both players. Tensor enumeration achieves eps = 0;
// the parameter shapes the contract for callback-backed classes.
ActionId best_response(const ZeroSumGame& game, int player,
                       const MixedStrategy& opponents_mixture,
                       std::span<const ActionId> candidates, double eps);
ActionId best_response(const MultiPlayerGame& game, int p,
                       const JointDistribution& opponents,
                       std::span<const ActionId> candidates, double eps);

// Value of the finite subgame by multiplicative-weights self-play, averaged
// payoff, |result - Val| <= tol. Runs at most ceil(16 log(max(m,n)+1)/tol^2)
// rounds; a certified duality-gap check lets it return earlier with the same
// guarantee. 1xN and Mx1 subgames are enumerated exactly.
double finite_value(const ZeroSumGame& game, std::span<const ActionId> rows,
                    std::span<const ActionId> cols, double tol);

double expected_utility(const ZeroSumGame& game, const MixedStrategy& mu1,
                        const MixedStrategy& mu2);

// (exploitability of player 1, of player 2), both by exact enumeration over
// the given universes; nonnegative by construction, and (mu1, mu2) is an
// eps-Nash iff both are <= eps.
std::pair<double, double> verify_nash(const ZeroSumGame& game,
                                      const MixedStrategy& mu1,
                                      const MixedStrategy& mu2,
                                      std::span<const ActionId> row_universe,
                                      std::span<const ActionId> col_universe);

// Max over players p and deviations d_p of E[u_p(d_p, a_-p)] - E[u_p(a)].
// The joint is an eps-CCE iff the result is <= eps.
double verify_cce(const MultiPlayerGame& game, const JointDistribution& joint);

// The zero-sum reduction of a multi-player game: rows are action profiles,
// columns are player-tagged deviations, and each entry is the deviation gain
// u_p(d_p, a_-p) - u_p(a_p, a_-p), lazily computed from two utility reads.
class CceMatrixView {
 public:
  explicit CceMatrixView(const MultiPlayerGame& game);

  const MultiPlayerGame& game() const { return *game_; }
  int num_columns() const { return int(deviations_.size()); }
  std::pair<int, ActionId> column(ActionId col_token) const;
  ActionId column_token(int p, ActionId d) const;

  ActionId intern_profile(const Profile& a);  // row token, stable per profile
  const Profile& profile(ActionId row_token) const;
  int num_profiles() const { return int(profiles_.size()); }

  double entry(ActionId row_token, ActionId col_token) const;

  // Zero-sum face over the interned rows; entries lie in [-1, 1]. The view
  // must outlive the returned game.
  ZeroSumGame as_zero_sum() const;

 private:
  const MultiPlayerGame* game_;
  std::vector<std::pair<int, ActionId>> deviations_;  // col token -> (p, d_p)
  std::map<std::pair<int, ActionId>, ActionId> deviation_tokens_;
  std::vector<Profile> profiles_;  // row token -> profile
  std::map<Profile, ActionId> profile_tokens_;
};

CceMatrixView cce_matrix(const MultiPlayerGame& game);

}  // namespace og

#endif  // OG_GAMES_HPP
