#include "og/concept_class.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace og {

FiniteConceptClass::FiniteConceptClass(
    int domain_size, LabelKind kind, std::vector<std::vector<double>> hypotheses)
    : domain_size_(domain_size), kind_(kind), rows_(std::move(hypotheses)) {
  if (domain_size_ <= 0) throw input_error("domain_size must be positive");
  if (rows_.empty()) throw input_error("a concept class needs at least one hypothesis");
  for (const auto& row : rows_) {
    if (static_cast<int>(row.size()) != domain_size_)
      throw input_error("hypothesis row length " + std::to_string(row.size()) +
                        " != domain_size " + std::to_string(domain_size_));
    for (double v : row) {
      if (kind_ == LabelKind::binary) {
        if (v != 0.0 && v != 1.0)
          throw input_error("binary class contains a non-0/1 label");
      } else if (!(v >= 0.0 && v <= 1.0)) {
        throw input_error("real class contains a label outside [0,1]");
      }
    }
  }
}

std::optional<HypothesisId> consistent_oracle(
    const FiniteConceptClass& cls, std::span<const LabeledExample> examples,
    TieBreak tie) {
  if (cls.label_kind() != LabelKind::binary)
    throw input_error("consistent oracle requires a binary class");
  for (const auto& ex : examples) cls.check_domain_index(ex.x);

  const int m = cls.size();
  auto consistent = [&](int h) {
    for (const auto& ex : examples)
      if (cls.at(h, ex.x) != ex.y) return false;
    return true;
  };
  if (tie == TieBreak::lowest) {
    for (int h = 0; h < m; ++h)
      if (consistent(h)) return HypothesisId{h};
  } else {
    for (int h = m - 1; h >= 0; --h)
      if (consistent(h)) return HypothesisId{h};
  }
  return std::nullopt;
}

double empirical_loss(const FiniteConceptClass& cls, HypothesisId h,
                      std::span<const LabeledExample> examples) {
  cls.check_hypothesis(h);
  double loss = 0.0;
  for (const auto& ex : examples) {
    cls.check_domain_index(ex.x);
    loss += std::abs(cls.at(h.index, ex.x) - ex.y);
  }
  return loss;
}

HypothesisId erm_oracle(const FiniteConceptClass& cls,
                        std::span<const LabeledExample> examples,
                        double opt_tol, TieBreak tie) {
  if (opt_tol < 0.0) throw input_error("opt_tol must be nonnegative");
  for (const auto& ex : examples) cls.check_domain_index(ex.x);

  const int m = cls.size();
  double best = std::numeric_limits<double>::infinity();
  int best_h = 0;
  for (int i = 0; i < m; ++i) {
    const int h = tie == TieBreak::lowest ? i : m - 1 - i;
    double loss = 0.0;
    for (const auto& ex : examples) loss += std::abs(cls.at(h, ex.x) - ex.y);
    if (loss < best) {
      best = loss;
      best_h = h;
    }
  }
  return HypothesisId{best_h};
}

double value_oracle(const FiniteConceptClass& cls, HypothesisId h, int x) {
  return cls.value(h, x);
}

}  // namespace og
