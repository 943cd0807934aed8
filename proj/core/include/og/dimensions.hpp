#ifndef OG_DIMENSIONS_HPP
#define OG_DIMENSIONS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "og/caps.hpp"
#include "og/concept_class.hpp"

namespace og {

// A real-valued concept class in table form; games reuse the same shape.
struct RealMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> entries;  // row-major

  double at(int i, int j) const { return entries[std::size_t(i) * cols + j]; }
  double& at(int i, int j) { return entries[std::size_t(i) * cols + j]; }
  static RealMatrix zeros(int m, int n) {
    return {m, n, std::vector<double>(std::size_t(m) * n, 0.0)};
  }
  void validate_unit_range() const;  // entries in [0,1]
};

RealMatrix to_matrix(const FiniteConceptClass& cls);
FiniteConceptClass binary_class_from_matrix(const RealMatrix& m);

// What certifies a reported dimension. Which fields are populated depends on
// the dimension kind; replay_* below checks them against the instance.
struct DimensionWitness {
  std::vector<int> rows;  // ordered f-indices (threshold family)
  std::vector<int> cols;  // shattered set (vc/fat) or ordered x-indices
  std::optional<double> theta;  // single fat-threshold witness
  std::vector<double> thetas;   // per-column fat-shattering witnesses

  // Complete binary tree in heap layout: tree_xs holds the 2^d - 1 internal
  // node labels, tree_leaves the 2^d leaf hypotheses left to right. A set
  // bit in the leaf index means "left child" (label 1 / >= theta+eps).
  std::vector<int> tree_xs;
  std::vector<double> tree_thetas;  // sequential-fat only
  std::vector<int> tree_leaves;
};

struct DimensionReport {
  int value = 0;
  bool search_exhaustive = true;
  bool saturated = false;  // sequential-fat hit its depth cap: value is ">= value"
  DimensionWitness witness;
};

DimensionReport vc_dimension(const FiniteConceptClass& cls,
                             const Caps& caps = Caps::from_env());
DimensionReport littlestone_dimension(const FiniteConceptClass& cls,
                                      const Caps& caps = Caps::from_env());
DimensionReport threshold_dimension(const FiniteConceptClass& cls,
                                    const Caps& caps = Caps::from_env());
// Greedy lower bound, no size cap; search_exhaustive = false.
DimensionReport threshold_dimension_greedy(const FiniteConceptClass& cls);

// Threshold candidates are exactly the matrix entries: any feasible pattern
// keeps working after moving theta onto the largest entry below it, so this
// finite sweep loses nothing.
DimensionReport fat_threshold_dimension(const RealMatrix& m, double eps,
                                        const Caps& caps = Caps::from_env());
DimensionReport fat_shattering_dimension(const RealMatrix& m, double eps,
                                         const Caps& caps = Caps::from_env());
DimensionReport sequential_fat_dimension(const RealMatrix& m, double eps,
                                         const Caps& caps = Caps::from_env());

bool replay_vc_witness(const FiniteConceptClass& cls, const DimensionReport& r);
bool replay_littlestone_witness(const FiniteConceptClass& cls,
                                const DimensionReport& r);
bool replay_threshold_witness(const FiniteConceptClass& cls,
                              const DimensionReport& r);
bool replay_fat_threshold_witness(const RealMatrix& m, double eps,
                                  const DimensionReport& r);
bool replay_fat_witness(const RealMatrix& m, double eps,
                        const DimensionReport& r);
bool replay_sfat_witness(const RealMatrix& m, double eps,
                         const DimensionReport& r);

// Row-wise XOR of a binary class with a label vector of matching length.
FiniteConceptClass xor_class(const FiniteConceptClass& cls,
                             std::span<const double> g);

// n groups of ell rows over n columns; group i is Bernoulli(p_hi) on columns
// j >= i and Bernoulli(p_lo) below, giving a noisy threshold staircase.
FiniteConceptClass random_twostage_class(int n, int ell, double p_hi,
                                         double p_lo, std::uint64_t seed);

// Column means per group of a two-stage class: the n x n staircase estimate.
RealMatrix group_mean_matrix(const FiniteConceptClass& cls, int n, int ell);

}  // namespace og

#endif  // OG_DIMENSIONS_HPP
