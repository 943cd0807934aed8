#ifndef OG_TRANSCRIPT_HPP
#define OG_TRANSCRIPT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace og {

enum class RunKind { learn, zero_sum, cce };

// One online-classification round.
struct RoundRecord {
  long round = 0;  // 1-based
  int phase = 0;   // 1-based
  int x = 0;
  double y = 0.0;
  double mixture_loss = 0.0;
  int prediction = 0;  // majority-vote label (improper prediction)
  bool mistake = false;
  bool update = false;
  int pool_size = 0;
  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

// One double-oracle outer iteration.
struct IterationRecord {
  long iteration = 0;  // 1-based
  int size_a = 0;
  int size_b = 0;
  double val_ab_prev = 0.0;  // Val(A_t, B_{t-1})
  double val_ab = 0.0;       // Val(A_t, B_t)
  long oracle_calls = 0;     // cumulative best-response calls
  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

enum class OracleKind { consistent, erm, value, best_response };

std::string oracle_kind_name(OracleKind k);

struct OracleCallRecord {
  OracleKind kind{};
  long at = 0;  // round or iteration the call belongs to
};

// Full log of a solve: every round/iteration record, every oracle call,
// phase boundaries, config echo, and the seed that reproduces it.
struct SolveTranscript {
  RunKind kind = RunKind::learn;
  std::uint64_t seed = 0;
  std::string config_echo;

  std::vector<RoundRecord> rounds;
  std::vector<IterationRecord> iterations;
  std::vector<OracleCallRecord> oracle_calls;
  std::map<OracleKind, long> oracle_counts;

  // phase_end_rounds[j] = round at which phase j+1 completed (1-based phases)
  std::vector<long> phase_end_rounds;
  // Hypothesis inserted at each phase end (-1 when the oracle returned an
  // existing pool member), plus the arbitrary starting hypothesis.
  int initial_hypothesis = 0;
  std::vector<int> phase_insertions;

  void log_oracle_call(OracleKind k, long at) {
    oracle_calls.push_back({k, at});
    ++oracle_counts[k];
  }
  long count(OracleKind k) const {
    auto it = oracle_counts.find(k);
    return it == oracle_counts.end() ? 0 : it->second;
  }
  // The counters must equal the number of logged calls at all times.
  bool counts_consistent() const;
};

// CSV codecs. Doubles are printed with round-trip precision so a parsed
// transcript compares equal to the one written.
std::string learn_csv(const SolveTranscript& t);
std::string solver_csv(const SolveTranscript& t);
std::vector<RoundRecord> parse_learn_csv(const std::string& csv);
std::vector<IterationRecord> parse_solver_csv(const std::string& csv);

}  // namespace og

#endif  // OG_TRANSCRIPT_HPP
