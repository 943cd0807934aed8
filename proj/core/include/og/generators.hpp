#ifndef OG_GENERATORS_HPP
#define OG_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "og/concept_class.hpp"
#include "og/dimensions.hpp"
#include "og/games.hpp"

namespace og {

// Row i of n predicts 1 from position i on: the threshold staircase.
FiniteConceptClass gen_threshold_class(int n);

RealMatrix threshold_matrix(int n);  // M[i][j] = 1[i <= j]

// u(a_i, b_j) = 1[i <= j]: the finite truncation of the threshold game.
ZeroSumGame gen_threshold_game(int n);

// m independent Bernoulli(p) rows over n points.
FiniteConceptClass gen_random_class(int m, int n, double p, std::uint64_t seed);

// Uniform [0,1] entries.
RealMatrix gen_random_matrix(int m, int n, std::uint64_t seed);
ZeroSumGame gen_random_zero_sum(int m, int n, std::uint64_t seed);

// Uniform [0,1] utilities per player over the profile tensor.
MultiPlayerGame gen_random_game(const std::vector<int>& shape, std::uint64_t seed);

// What the CLI's `gen` subcommand accepts.
struct InstanceSpec {
  std::string kind;  // threshold_class|random_class|twostage_class|threshold_game|random_game
  int n = 0;
  int m = 0;
  int ell = 0;
  double p = 0.5;
  double p_hi = 0.7;
  double p_lo = 0.3;
  std::vector<int> shape;
  std::uint64_t seed = 0;
};

}  // namespace og

#endif  // OG_GENERATORS_HPP
