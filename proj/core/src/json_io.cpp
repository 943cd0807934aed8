#include "og/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace og {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write file: " + path);
  out << content;
}

namespace {

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error("malformed JSON");
  return j;
}

}  // namespace

std::string class_to_json(const FiniteConceptClass& cls) {
  json j;
  j["domain_size"] = cls.domain_size();
  j["label_kind"] = cls.label_kind() == LabelKind::binary ? "binary" : "real";
  json rows = json::array();
  for (int h = 0; h < cls.size(); ++h) rows.push_back(cls.row(h));
  j["hypotheses"] = std::move(rows);
  return j.dump(2) + "\n";
}

FiniteConceptClass class_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("domain_size") || !j.contains("label_kind") ||
      !j.contains("hypotheses"))
    throw input_error("class JSON needs domain_size, label_kind, hypotheses");
  std::string kind = j["label_kind"].get<std::string>();
  if (kind != "binary" && kind != "real")
    throw input_error("label_kind must be \"binary\" or \"real\"");
  return FiniteConceptClass(
      j["domain_size"].get<int>(),
      kind == "binary" ? LabelKind::binary : LabelKind::real,
      j["hypotheses"].get<std::vector<std::vector<double>>>());
}

ZeroSumGame GameFile::as_zero_sum() const {
  if (!is_zero_sum())
    throw input_error("game file is not in zero-sum form");
  return ZeroSumGame::from_matrix(*zero_sum_matrix);
}

MultiPlayerGame GameFile::as_multi_player() const {
  if (is_zero_sum()) {
    const RealMatrix& m = *zero_sum_matrix;
    std::vector<std::vector<double>> tensors(2);
    tensors[0].reserve(m.entries.size());
    tensors[1] = m.entries;
    for (double v : m.entries) tensors[0].push_back(1.0 - v);
    return MultiPlayerGame::from_tensors({m.rows, m.cols}, std::move(tensors));
  }
  return MultiPlayerGame::from_tensors(shape, utilities);
}

GameFile game_from_json(const std::string& text) {
  json j = parse(text);
  GameFile g;
  if (j.contains("zerosum") && j["zerosum"].get<bool>()) {
    auto rows = j["matrix"].get<std::vector<std::vector<double>>>();
    if (rows.empty() || rows.front().empty())
      throw input_error("zero-sum matrix must be nonempty");
    RealMatrix m = RealMatrix::zeros(int(rows.size()), int(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.front().size())
        throw input_error("ragged zero-sum matrix");
      for (std::size_t c = 0; c < rows[i].size(); ++c)
        m.at(int(i), int(c)) = rows[i][c];
    }
    m.validate_unit_range();
    g.zero_sum_matrix = std::move(m);
    return g;
  }
  if (!j.contains("players") || !j.contains("shape") || !j.contains("utilities"))
    throw input_error("game JSON needs players, shape, utilities");
  g.shape = j["shape"].get<std::vector<int>>();
  if (int(g.shape.size()) != j["players"].get<int>())
    throw input_error("shape length does not match player count");
  g.utilities = j["utilities"].get<std::vector<std::vector<double>>>();
  return g;
}

std::string zero_sum_game_to_json(const RealMatrix& matrix) {
  json j;
  j["zerosum"] = true;
  json rows = json::array();
  for (int i = 0; i < matrix.rows; ++i) {
    json row = json::array();
    for (int c = 0; c < matrix.cols; ++c) row.push_back(matrix.at(i, c));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string multi_player_game_to_json(
    const std::vector<int>& shape,
    const std::vector<std::vector<double>>& utilities) {
  json j;
  j["players"] = int(shape.size());
  j["shape"] = shape;
  j["utilities"] = utilities;
  return j.dump(2) + "\n";
}

std::string strategy_to_json(const MixedStrategy& s) {
  json j;
  j["support"] = s.support;
  j["probs"] = s.probs;
  return j.dump(2) + "\n";
}

MixedStrategy strategy_from_json(const std::string& text) {
  json j = parse(text);
  MixedStrategy s;
  s.support = j["support"].get<std::vector<ActionId>>();
  s.probs = j["probs"].get<std::vector<double>>();
  s.validate();
  return s;
}

namespace {

json joint_to_json_value(const JointDistribution& joint) {
  json j;
  j["support"] = joint.support;
  j["probs"] = joint.probs;
  return j;
}

JointDistribution joint_from_json_value(const json& j) {
  JointDistribution joint;
  joint.support = j["support"].get<std::vector<Profile>>();
  joint.probs = j["probs"].get<std::vector<double>>();
  return joint;
}

}  // namespace

std::string certificate_to_json(const EquilibriumCertificate& c) {
  json j;
  j["kind"] = c.kind;
  j["eps"] = c.eps;
  j["val_tol"] = c.val_tol;
  j["claimed_epsilon"] = c.claimed_epsilon;
  j["seed"] = c.seed;
  j["value"] = c.value;
  j["iterations"] = c.iterations;
  j["oracle_calls"] = c.oracle_calls;
  if (c.kind == "zero-sum") {
    j["strategy1"] = {{"support", c.strategy1.support}, {"probs", c.strategy1.probs}};
    j["strategy2"] = {{"support", c.strategy2.support}, {"probs", c.strategy2.probs}};
  } else {
    j["joint"] = joint_to_json_value(c.joint);
  }
  return j.dump(2) + "\n";
}

EquilibriumCertificate certificate_from_json(const std::string& text) {
  json j = parse(text);
  EquilibriumCertificate c;
  c.kind = j["kind"].get<std::string>();
  c.eps = j["eps"].get<double>();
  c.val_tol = j["val_tol"].get<double>();
  c.claimed_epsilon = j["claimed_epsilon"].get<double>();
  c.seed = j["seed"].get<std::uint64_t>();
  c.value = j["value"].get<double>();
  c.iterations = j["iterations"].get<long>();
  c.oracle_calls = j["oracle_calls"].get<long>();
  if (c.kind == "zero-sum") {
    c.strategy1.support = j["strategy1"]["support"].get<std::vector<ActionId>>();
    c.strategy1.probs = j["strategy1"]["probs"].get<std::vector<double>>();
    c.strategy2.support = j["strategy2"]["support"].get<std::vector<ActionId>>();
    c.strategy2.probs = j["strategy2"]["probs"].get<std::vector<double>>();
  } else if (c.kind == "cce") {
    c.joint = joint_from_json_value(j["joint"]);
  } else {
    throw input_error("unknown certificate kind: " + c.kind);
  }
  return c;
}

StreamFile stream_from_json(const std::string& text) {
  json j = parse(text);
  StreamFile s;
  if (j.is_array()) {
    for (const auto& pair : j) {
      if (!pair.is_array() || pair.size() != 2)
        throw input_error("stream entries must be [x, y] pairs");
      s.fixed.push_back({pair[0].get<int>(), pair[1].get<double>()});
    }
    return s;
  }
  if (!j.contains("adversary"))
    throw input_error("stream JSON must be a pair list or a generator spec");
  s.generated = true;
  s.adversary = j["adversary"].get<std::string>();
  if (s.adversary != "greedy" && s.adversary != "replay" && s.adversary != "random")
    throw input_error("adversary must be greedy, replay, or random");
  s.hstar = j.value("hstar", 0);
  s.rounds = j.value("rounds", 0L);
  s.seed = j.value("seed", std::uint64_t(0));
  if (s.rounds < 1) throw input_error("generator spec needs rounds >= 1");
  return s;
}

std::string stream_to_json(const std::vector<LabeledExample>& examples) {
  json j = json::array();
  for (const auto& ex : examples) j.push_back({ex.x, ex.y});
  return j.dump() + "\n";
}

std::string dimension_report_to_json(const std::string& which,
                                     const DimensionReport& report,
                                     std::optional<double> eps) {
  json j;
  j["which"] = which;
  if (eps) j["eps"] = *eps;
  j["value"] = report.value;
  j["search_exhaustive"] = report.search_exhaustive;
  j["saturated"] = report.saturated;
  json w;
  if (!report.witness.rows.empty()) w["rows"] = report.witness.rows;
  if (!report.witness.cols.empty()) w["cols"] = report.witness.cols;
  if (report.witness.theta) w["theta"] = *report.witness.theta;
  if (!report.witness.thetas.empty()) w["thetas"] = report.witness.thetas;
  if (!report.witness.tree_xs.empty()) w["tree_xs"] = report.witness.tree_xs;
  if (!report.witness.tree_thetas.empty())
    w["tree_thetas"] = report.witness.tree_thetas;
  if (!report.witness.tree_leaves.empty())
    w["tree_leaves"] = report.witness.tree_leaves;
  j["witness"] = std::move(w);
  return j.dump(2) + "\n";
}

}  // namespace og
