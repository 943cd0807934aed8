#include "og/generators.hpp"

#include "og/rng.hpp"

namespace og {

FiniteConceptClass gen_threshold_class(int n) {
  if (n < 1) throw input_error("threshold class needs n >= 1");
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rows[std::size_t(i)].resize(std::size_t(n));
    for (int j = 0; j < n; ++j)
      rows[std::size_t(i)][std::size_t(j)] = i <= j ? 1.0 : 0.0;
  }
  return FiniteConceptClass(n, LabelKind::binary, std::move(rows));
}

RealMatrix threshold_matrix(int n) {
  if (n < 1) throw input_error("threshold matrix needs n >= 1");
  RealMatrix m = RealMatrix::zeros(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.at(i, j) = 1.0;
  return m;
}

ZeroSumGame gen_threshold_game(int n) {
  return ZeroSumGame::from_matrix(threshold_matrix(n));
}

FiniteConceptClass gen_random_class(int m, int n, double p, std::uint64_t seed) {
  if (m < 1 || n < 1) throw input_error("random class needs m, n >= 1");
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    rows[std::size_t(i)].resize(std::size_t(n));
    for (int j = 0; j < n; ++j)
      rows[std::size_t(i)][std::size_t(j)] = rng.bernoulli(p) ? 1.0 : 0.0;
  }
  return FiniteConceptClass(n, LabelKind::binary, std::move(rows));
}

RealMatrix gen_random_matrix(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw input_error("random matrix needs m, n >= 1");
  SplitMix64 rng(seed);
  RealMatrix out = RealMatrix::zeros(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = rng.next_double();
  return out;
}

ZeroSumGame gen_random_zero_sum(int m, int n, std::uint64_t seed) {
  return ZeroSumGame::from_matrix(gen_random_matrix(m, n, seed));
}

MultiPlayerGame gen_random_game(const std::vector<int>& shape,
                                std::uint64_t seed) {
  const int k = int(shape.size());
  if (k < 2) throw input_error("random game needs at least 2 players");
  std::size_t cells = 1;
  for (int n : shape) {
    if (n < 1) throw input_error("every player needs at least one action");
    cells *= std::size_t(n);
  }
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> tensors(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) {
    tensors[std::size_t(p)].resize(cells);
    for (std::size_t c = 0; c < cells; ++c)
      tensors[std::size_t(p)][c] = rng.next_double();
  }
  return MultiPlayerGame::from_tensors(shape, std::move(tensors));
}

}  // namespace og
