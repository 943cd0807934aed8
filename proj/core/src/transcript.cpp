#include "og/transcript.hpp"

#include <cstdio>
#include <sstream>

#include "og/errors.hpp"

namespace og {

std::string oracle_kind_name(OracleKind k) {
  switch (k) {
    case OracleKind::consistent: return "consistent";
    case OracleKind::erm: return "erm";
    case OracleKind::value: return "value";
    case OracleKind::best_response: return "best_response";
  }
  return "unknown";
}

bool SolveTranscript::counts_consistent() const {
  std::map<OracleKind, long> tally;
  for (const auto& c : oracle_calls) ++tally[c.kind];
  for (const auto& [k, n] : oracle_counts)
    if (n != 0 && (tally.find(k) == tally.end() || tally.at(k) != n)) return false;
  for (const auto& [k, n] : tally) {
    auto it = oracle_counts.find(k);
    if (it == oracle_counts.end() || it->second != n) return false;
  }
  return true;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string learn_csv(const SolveTranscript& t) {
  std::ostringstream os;
  os << "round,phase,x,y,mixture_loss,prediction,mistake,update,pool_size\n";
  for (const auto& r : t.rounds) {
    os << r.round << ',' << r.phase << ',' << r.x << ',' << fmt_double(r.y)
       << ',' << fmt_double(r.mixture_loss) << ',' << r.prediction << ','
       << (r.mistake ? 1 : 0) << ',' << (r.update ? 1 : 0) << ','
       << r.pool_size << '\n';
  }
  return os.str();
}

std::string solver_csv(const SolveTranscript& t) {
  std::ostringstream os;
  os << "iteration,size_a,size_b,val_ab_prev,val_ab,oracle_calls\n";
  for (const auto& r : t.iterations) {
    os << r.iteration << ',' << r.size_a << ',' << r.size_b << ','
       << fmt_double(r.val_ab_prev) << ',' << fmt_double(r.val_ab) << ','
       << r.oracle_calls << '\n';
  }
  return os.str();
}

std::vector<RoundRecord> parse_learn_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) ||
      line != "round,phase,x,y,mixture_loss,prediction,mistake,update,pool_size")
    throw input_error("bad learn transcript header");
  std::vector<RoundRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 9) throw input_error("bad learn transcript row: " + line);
    RoundRecord r;
    r.round = std::stol(f[0]);
    r.phase = std::stoi(f[1]);
    r.x = std::stoi(f[2]);
    r.y = std::stod(f[3]);
    r.mixture_loss = std::stod(f[4]);
    r.prediction = std::stoi(f[5]);
    r.mistake = f[6] == "1";
    r.update = f[7] == "1";
    r.pool_size = std::stoi(f[8]);
    out.push_back(r);
  }
  return out;
}

std::vector<IterationRecord> parse_solver_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) ||
      line != "iteration,size_a,size_b,val_ab_prev,val_ab,oracle_calls")
    throw input_error("bad solver transcript header");
  std::vector<IterationRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 6) throw input_error("bad solver transcript row: " + line);
    IterationRecord r;
    r.iteration = std::stol(f[0]);
    r.size_a = std::stoi(f[1]);
    r.size_b = std::stoi(f[2]);
    r.val_ab_prev = std::stod(f[3]);
    r.val_ab = std::stod(f[4]);
    r.oracle_calls = std::stol(f[5]);
    out.push_back(r);
  }
  return out;
}

}  // namespace og
