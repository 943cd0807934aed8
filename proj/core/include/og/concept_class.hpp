#ifndef OG_CONCEPT_CLASS_HPP
#define OG_CONCEPT_CLASS_HPP

#include <optional>
#include <span>
#include <vector>

#include "og/errors.hpp"

namespace og {

enum class LabelKind { binary, real };

struct LabeledExample {
  int x = 0;       // domain index
  double y = 0.0;  // 0/1 for binary classes
};

struct HypothesisId {
  int index = 0;
  friend bool operator==(HypothesisId, HypothesisId) = default;
};

// A hypothesis class as a finite table: one row per hypothesis, one column
// per domain point. Immutable after construction; every oracle and dimension
// computation reads it through value lookups.
class FiniteConceptClass {
 public:
  FiniteConceptClass(int domain_size, LabelKind kind,
                     std::vector<std::vector<double>> hypotheses);

  int domain_size() const { return domain_size_; }
  int size() const { return static_cast<int>(rows_.size()); }
  LabelKind label_kind() const { return kind_; }

  double value(HypothesisId h, int x) const {
    check_hypothesis(h);
    check_domain_index(x);
    return rows_[h.index][x];
  }
  // Unchecked table read for inner loops.
  double at(int h, int x) const { return rows_[h][x]; }
  const std::vector<double>& row(int h) const { return rows_[h]; }

  void check_domain_index(int x) const {
    if (x < 0 || x >= domain_size_)
      throw input_error("domain index out of range: " + std::to_string(x));
  }
  void check_hypothesis(HypothesisId h) const {
    if (h.index < 0 || h.index >= size())
      throw input_error("hypothesis index out of range: " +
                        std::to_string(h.index));
  }

 private:
  int domain_size_;
  LabelKind kind_;
  std::vector<std::vector<double>> rows_;
};

// When several hypotheses tie, the lowest row index wins by default. The
// highest-index mode exists to stress learners whose guarantees must hold
// for every oracle choice.
enum class TieBreak { lowest, highest };

// Zero-loss hypothesis for the given examples, if one exists.
std::optional<HypothesisId> consistent_oracle(
    const FiniteConceptClass& cls, std::span<const LabeledExample> examples,
    TieBreak tie = TieBreak::lowest);

// Hypothesis minimizing total absolute loss; exact by full enumeration on
// tabular classes, so opt_tol only shapes the contract for future
// oracle-backed classes.
HypothesisId erm_oracle(const FiniteConceptClass& cls,
                        std::span<const LabeledExample> examples,
                        double opt_tol = 0.0, TieBreak tie = TieBreak::lowest);

double value_oracle(const FiniteConceptClass& cls, HypothesisId h, int x);

// Total absolute loss of one hypothesis on an example multiset.
double empirical_loss(const FiniteConceptClass& cls, HypothesisId h,
                      std::span<const LabeledExample> examples);

}  // namespace og

#endif  // OG_CONCEPT_CLASS_HPP
