#ifndef OG_JSON_IO_HPP
#define OG_JSON_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "og/concept_class.hpp"
#include "og/dimensions.hpp"
#include "og/equilibria.hpp"
#include "og/games.hpp"
#include "og/generators.hpp"

namespace og {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// {"domain_size": n, "label_kind": "binary"|"real", "hypotheses": [[..], ..]}
std::string class_to_json(const FiniteConceptClass& cls);
FiniteConceptClass class_from_json(const std::string& text);

// Games: {"players": k, "shape": [n_1..n_k], "utilities": [[flat row-major
// tensor per player]]} with the zero-sum shorthand
// {"zerosum": true, "matrix": [[..]]} (matrix = player-2 utility).
struct GameFile {
  std::optional<RealMatrix> zero_sum_matrix;
  std::vector<int> shape;                       // multi-player form
  std::vector<std::vector<double>> utilities;   // multi-player form

  bool is_zero_sum() const { return zero_sum_matrix.has_value(); }
  ZeroSumGame as_zero_sum() const;
  // A zero-sum matrix lifts to the 2-player general-sum game with
  // u2 = matrix and u1 = 1 - matrix.
  MultiPlayerGame as_multi_player() const;
};

GameFile game_from_json(const std::string& text);
std::string zero_sum_game_to_json(const RealMatrix& matrix);
std::string multi_player_game_to_json(const std::vector<int>& shape,
                                      const std::vector<std::vector<double>>& utilities);

std::string strategy_to_json(const MixedStrategy& s);
MixedStrategy strategy_from_json(const std::string& text);

std::string certificate_to_json(const EquilibriumCertificate& c);
EquilibriumCertificate certificate_from_json(const std::string& text);

// Stream files: either a JSON list of [x, y] pairs or a generator spec
// {"adversary": "greedy"|"replay"|"random", "hstar": row, "rounds": T,
//  "seed": s}.
struct StreamFile {
  std::vector<LabeledExample> fixed;
  bool generated = false;
  std::string adversary;
  int hstar = 0;
  long rounds = 0;
  std::uint64_t seed = 0;
};

StreamFile stream_from_json(const std::string& text);
std::string stream_to_json(const std::vector<LabeledExample>& examples);

std::string dimension_report_to_json(const std::string& which,
                                     const DimensionReport& report,
                                     std::optional<double> eps);

}  // namespace og

#endif  // OG_JSON_IO_HPP
