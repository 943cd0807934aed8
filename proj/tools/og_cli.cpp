// Command-line front end: instance generation, dimension reports, online
// learning runs, equilibrium solving, and certificate verification. Every
// run is a pure function of (argv, input files, seed); outputs are
// byte-stable across reruns.

#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "og/caps.hpp"
#include "og/equilibria.hpp"
#include "og/generators.hpp"
#include "og/json_io.hpp"
#include "og/online.hpp"

namespace {

using namespace og;

std::string with_seed_suffix(const std::string& path, std::uint64_t seed,
                             bool multi) {
  if (!multi) return path;
  std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / p.stem();
  return out.string() + ".seed" + std::to_string(seed) + p.extension().string();
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) throw input_error("empty seed list");
  return seeds;
}

int run_gen(const InstanceSpec& spec, const std::string& out) {
  std::string text;
  if (spec.kind == "threshold_class") {
    text = class_to_json(gen_threshold_class(spec.n));
  } else if (spec.kind == "random_class") {
    text = class_to_json(gen_random_class(spec.m, spec.n, spec.p, spec.seed));
  } else if (spec.kind == "twostage_class") {
    text = class_to_json(
        random_twostage_class(spec.n, spec.ell, spec.p_hi, spec.p_lo, spec.seed));
  } else if (spec.kind == "threshold_game") {
    text = zero_sum_game_to_json(threshold_matrix(spec.n));
  } else if (spec.kind == "random_game") {
    if (spec.shape.empty()) {
      text = zero_sum_game_to_json(gen_random_matrix(spec.m, spec.n, spec.seed));
    } else {
      SplitMix64 rng(spec.seed);
      std::size_t cells = 1;
      for (int n : spec.shape) cells *= std::size_t(n);
      std::vector<std::vector<double>> tensors(spec.shape.size());
      for (auto& t : tensors) {
        t.resize(cells);
        for (auto& v : t) v = rng.next_double();
      }
      text = multi_player_game_to_json(spec.shape, tensors);
    }
  } else {
    throw input_error("unknown generator kind: " + spec.kind);
  }
  write_file(out, text);
  return 0;
}

int run_dims(const std::string& in, const std::string& which_csv, double eps,
             bool greedy, const std::string& out) {
  FiniteConceptClass cls = class_from_json(read_file(in));
  Caps caps = Caps::from_env();

  std::ostringstream result;
  std::stringstream ss(which_csv);
  std::string which;
  while (std::getline(ss, which, ',')) {
    if (which == "vc") {
      result << dimension_report_to_json(which, vc_dimension(cls, caps), {});
    } else if (which == "littlestone") {
      result << dimension_report_to_json(which, littlestone_dimension(cls, caps), {});
    } else if (which == "threshold") {
      auto report = greedy ? threshold_dimension_greedy(cls)
                           : threshold_dimension(cls, caps);
      result << dimension_report_to_json(which, report, {});
    } else if (which == "fatr") {
      result << dimension_report_to_json(
          which, fat_threshold_dimension(to_matrix(cls), eps, caps), eps);
    } else if (which == "fat") {
      result << dimension_report_to_json(
          which, fat_shattering_dimension(to_matrix(cls), eps, caps), eps);
    } else if (which == "sfat") {
      result << dimension_report_to_json(
          which, sequential_fat_dimension(to_matrix(cls), eps, caps), eps);
    } else {
      throw input_error("unknown dimension: " + which);
    }
  }
  if (out.empty())
    std::cout << result.str();
  else
    write_file(out, result.str());
  return 0;
}

int run_learn(const std::string& class_path, const std::string& stream_path,
              const std::string& mode, double eps, double alpha, double c,
              const std::string& tie, long rounds_override,
              const std::string& out_transcript, const std::string& out_summary) {
  FiniteConceptClass cls = class_from_json(read_file(class_path));
  StreamFile stream = stream_from_json(read_file(stream_path));

  LearnerConfig config;
  config.mode = mode == "proper" ? LearnerMode::proper : LearnerMode::improper;
  config.epsilon = eps;
  config.alpha = alpha;
  config.mw_constant = c;
  config.tie = tie == "highest" ? TieBreak::highest : TieBreak::lowest;

  SolveTranscript transcript;
  if (stream.generated) {
    long rounds = rounds_override > 0 ? rounds_override : stream.rounds;
    if (stream.adversary == "greedy") {
      GreedyAdversary adv(stream.hstar);
      transcript = run_realizable(cls, adv, rounds, config);
    } else if (stream.adversary == "random") {
      RandomAdversary adv(stream.hstar, stream.seed);
      transcript = run_realizable(cls, adv, rounds, config);
    } else {  // replay: cycle the domain under h*'s labels
      std::vector<LabeledExample> cycle;
      for (int x = 0; x < cls.domain_size(); ++x)
        cycle.push_back({x, cls.at(stream.hstar, x)});
      ReplayAdversary adv(std::move(cycle));
      transcript = run_realizable(cls, adv, rounds, config);
    }
    transcript.seed = stream.seed;
  } else {
    long rounds = rounds_override > 0 ? rounds_override : long(stream.fixed.size());
    ReplayAdversary adv(stream.fixed);
    transcript = run_realizable(cls, adv, rounds, config);
  }

  if (!out_transcript.empty()) write_file(out_transcript, learn_csv(transcript));
  if (!out_summary.empty()) {
    long mistakes = 0, updates = 0;
    for (const auto& r : transcript.rounds) {
      mistakes += r.mistake ? 1 : 0;
      updates += r.update ? 1 : 0;
    }
    std::ostringstream os;
    os << "{\n  \"rounds\": " << transcript.rounds.size()
       << ",\n  \"mistakes\": " << mistakes << ",\n  \"updates\": " << updates
       << ",\n  \"phases_completed\": " << transcript.phase_end_rounds.size()
       << ",\n  \"pool_size\": "
       << (transcript.rounds.empty() ? 1 : transcript.rounds.back().pool_size)
       << ",\n  \"consistent_calls\": " << transcript.count(OracleKind::consistent)
       << "\n}\n";
    write_file(out_summary, os.str());
  }
  return 0;
}

int solve_zero_sum_once(const GameFile& file, double eps, double val_tol,
                        std::uint64_t seed, long iteration_cap,
                        const std::string& out_cert,
                        const std::string& out_transcript, bool multi_seed) {
  ZeroSumGame game = file.as_zero_sum();
  ZeroSumOracles oracles = tensor_oracles(game);
  Caps caps = Caps::from_env();
  if (iteration_cap > 0) caps.solver_iteration_cap = iteration_cap;
  SolveResult result = nash_zero_sum(game, oracles, eps, val_tol, seed, caps);
  if (!out_cert.empty())
    write_file(with_seed_suffix(out_cert, seed, multi_seed),
               certificate_to_json(result.certificate));
  if (!out_transcript.empty())
    write_file(with_seed_suffix(out_transcript, seed, multi_seed),
               solver_csv(result.transcript));
  std::printf("seed=%llu value=%.6f claimed_eps=%.4f iterations=%ld oracle_calls=%ld\n",
              (unsigned long long)seed, result.certificate.value,
              result.certificate.claimed_epsilon, result.certificate.iterations,
              result.certificate.oracle_calls);
  return 0;
}

int solve_cce_once(const GameFile& file, double eps, double val_tol,
                   std::uint64_t seed, long iteration_cap, bool exact,
                   const std::string& out_cert, const std::string& out_transcript,
                   bool multi_seed) {
  MultiPlayerGame game = file.as_multi_player();
  Caps caps = Caps::from_env();
  if (iteration_cap > 0) caps.solver_iteration_cap = iteration_cap;
  SolveResult result =
      cce_multiplayer(game, eps, val_tol, seed,
                      exact ? CceMode::expectation_exact : CceMode::sampled, caps);
  if (!out_cert.empty())
    write_file(with_seed_suffix(out_cert, seed, multi_seed),
               certificate_to_json(result.certificate));
  if (!out_transcript.empty())
    write_file(with_seed_suffix(out_transcript, seed, multi_seed),
               solver_csv(result.transcript));
  std::printf("seed=%llu restricted_value=%.6f claimed_eps=%.4f iterations=%ld oracle_calls=%ld\n",
              (unsigned long long)seed, result.certificate.value,
              result.certificate.claimed_epsilon, result.certificate.iterations,
              result.certificate.oracle_calls);
  return 0;
}

int run_verify(const std::string& game_path, const std::string& cert_path) {
  GameFile file = game_from_json(read_file(game_path));
  EquilibriumCertificate cert = certificate_from_json(read_file(cert_path));
  if (cert.kind == "zero-sum") {
    ZeroSumGame game = file.as_zero_sum();
    auto [e1, e2] = verify_nash(game, cert.strategy1, cert.strategy2,
                                game.row_universe, game.col_universe);
    std::printf("exploitability1=%.6f exploitability2=%.6f claimed=%.6f\n", e1,
                e2, cert.claimed_epsilon);
    return e1 <= cert.claimed_epsilon + 1e-9 && e2 <= cert.claimed_epsilon + 1e-9
               ? 0
               : 1;
  }
  MultiPlayerGame game = file.as_multi_player();
  double gain = verify_cce(game, cert.joint);
  std::printf("max_deviation_gain=%.6f claimed=%.6f\n", gain, cert.claimed_epsilon);
  return gain <= cert.claimed_epsilon + 1e-9 ? 0 : 1;
}

// Fans a solve out over several seeds; results print in seed order.
template <typename Solve>
int fan_out(const std::vector<std::uint64_t>& seeds, int jobs, Solve&& solve) {
  if (seeds.size() == 1) return solve(seeds[0]);
  int rc = 0;
  for (std::size_t begin = 0; begin < seeds.size(); begin += std::size_t(jobs)) {
    std::size_t end = std::min(seeds.size(), begin + std::size_t(jobs));
    std::vector<std::future<int>> batch;
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(std::launch::async, solve, seeds[i]));
    for (auto& f : batch) rc = std::max(rc, f.get());
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ERM-oracle online learning and best-response equilibrium solving"};
  app.require_subcommand(1);

  // gen
  InstanceSpec spec;
  std::string gen_out, gen_shape_csv;
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--kind", spec.kind,
                  "threshold_class|random_class|twostage_class|threshold_game|random_game")
      ->required();
  gen->add_option("--n", spec.n, "Domain size / game side");
  gen->add_option("--m", spec.m, "Hypothesis count / row count");
  gen->add_option("--ell", spec.ell, "Rows per group (twostage)");
  gen->add_option("--p", spec.p, "Bernoulli parameter (random_class)");
  gen->add_option("--p-hi", spec.p_hi, "Upper Bernoulli parameter (twostage)");
  gen->add_option("--p-lo", spec.p_lo, "Lower Bernoulli parameter (twostage)");
  gen->add_option("--shape", gen_shape_csv, "Comma list of per-player action counts");
  gen->add_option("--seed", spec.seed, "PRNG seed");
  gen->add_option("--out", gen_out, "Output path")->required();

  // dims
  std::string dims_in, dims_which, dims_out;
  double dims_eps = 0.5;
  bool dims_greedy = false;
  auto* dims = app.add_subcommand("dims", "Compute combinatorial dimensions");
  dims->add_option("--in", dims_in, "Class/matrix JSON")->required();
  dims->add_option("--which", dims_which,
                   "Comma list of vc|littlestone|threshold|fat|sfat|fatr")
      ->required();
  dims->add_option("--eps", dims_eps, "Margin for the fat dimensions");
  dims->add_flag("--greedy", dims_greedy,
                 "Greedy lower-bound mode for the threshold dimension");
  dims->add_option("--out", dims_out, "Output path (stdout when absent)");

  // learn
  std::string learn_class, learn_stream, learn_mode = "improper",
              learn_tie = "lowest", learn_transcript, learn_summary;
  double learn_eps = 0.5, learn_alpha = 0.25, learn_c = 8.0;
  long learn_rounds = 0;
  auto* learn = app.add_subcommand("learn", "Run the realizable online learner");
  learn->add_option("--class", learn_class, "Concept class JSON")->required();
  learn->add_option("--stream", learn_stream, "Stream JSON (pairs or generator spec)")
      ->required();
  learn->add_option("--mode", learn_mode, "proper|improper");
  learn->add_option("--eps", learn_eps, "Epsilon (proper mode; improper pins 1/2)");
  learn->add_option("--alpha", learn_alpha, "Alpha in (0, eps)");
  learn->add_option("--mw-constant", learn_c, "Phase budget constant C");
  learn->add_option("--tie", learn_tie, "Oracle tie-break: lowest|highest");
  learn->add_option("--rounds", learn_rounds, "Override round count");
  learn->add_option("--out-transcript", learn_transcript, "Transcript CSV path");
  learn->add_option("--out-summary", learn_summary, "Summary JSON path");

  // solve-zero-sum / solve-cce
  std::string zs_game, zs_cert, zs_transcript, zs_seeds;
  double zs_eps = 0.1, zs_val_tol = 0.01;
  std::uint64_t zs_seed = 0;
  long zs_cap = 0;
  int zs_jobs = 1;
  auto* zs = app.add_subcommand("solve-zero-sum",
                                "Double-oracle minimax for a zero-sum game");
  zs->add_option("--game", zs_game, "Game JSON")->required();
  zs->add_option("--eps", zs_eps, "Target epsilon");
  zs->add_option("--val-tol", zs_val_tol, "Val subroutine tolerance");
  zs->add_option("--seed", zs_seed, "PRNG seed");
  zs->add_option("--seeds", zs_seeds, "Comma list of seeds (fan-out)");
  zs->add_option("--jobs", zs_jobs, "Parallel solves when --seeds is given");
  zs->add_option("--iteration-cap", zs_cap, "Outer iteration cap override");
  zs->add_option("--out-cert", zs_cert, "Certificate JSON path");
  zs->add_option("--out-transcript", zs_transcript, "Transcript CSV path");

  std::string cce_game, cce_cert, cce_transcript, cce_seeds;
  double cce_eps = 0.1, cce_val_tol = 0.01;
  std::uint64_t cce_seed = 0;
  long cce_cap = 0;
  int cce_jobs = 1;
  bool cce_exact = false;
  auto* cce = app.add_subcommand("solve-cce",
                                 "Double-oracle CCE for a multi-player game");
  cce->add_option("--game", cce_game, "Game JSON")->required();
  cce->add_option("--eps", cce_eps, "Target epsilon");
  cce->add_option("--val-tol", cce_val_tol, "Val subroutine tolerance");
  cce->add_option("--seed", cce_seed, "PRNG seed");
  cce->add_option("--seeds", cce_seeds, "Comma list of seeds (fan-out)");
  cce->add_option("--jobs", cce_jobs, "Parallel solves when --seeds is given");
  cce->add_option("--iteration-cap", cce_cap, "Outer iteration cap override");
  cce->add_flag("--exact-cce", cce_exact,
                "Expectation-exact finite-CCE subroutine (no sampling)");
  cce->add_option("--out-cert", cce_cert, "Certificate JSON path");
  cce->add_option("--out-transcript", cce_transcript, "Transcript CSV path");

  // verify
  std::string verify_game, verify_cert;
  auto* verify = app.add_subcommand("verify", "Re-verify a certificate");
  verify->add_option("--game", verify_game, "Game JSON")->required();
  verify->add_option("--cert", verify_cert, "Certificate JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (!gen_shape_csv.empty()) {
        std::stringstream ss(gen_shape_csv);
        std::string item;
        while (std::getline(ss, item, ',')) spec.shape.push_back(std::stoi(item));
      }
      return run_gen(spec, gen_out);
    }
    if (dims->parsed())
      return run_dims(dims_in, dims_which, dims_eps, dims_greedy, dims_out);
    if (learn->parsed())
      return run_learn(learn_class, learn_stream, learn_mode, learn_eps,
                       learn_alpha, learn_c, learn_tie, learn_rounds,
                       learn_transcript, learn_summary);
    if (zs->parsed()) {
      GameFile file = game_from_json(read_file(zs_game));
      auto seeds = zs_seeds.empty() ? std::vector<std::uint64_t>{zs_seed}
                                    : parse_seed_list(zs_seeds);
      bool multi = seeds.size() > 1;
      return fan_out(seeds, std::max(1, zs_jobs), [&](std::uint64_t s) {
        return solve_zero_sum_once(file, zs_eps, zs_val_tol, s, zs_cap, zs_cert,
                                   zs_transcript, multi);
      });
    }
    if (cce->parsed()) {
      GameFile file = game_from_json(read_file(cce_game));
      auto seeds = cce_seeds.empty() ? std::vector<std::uint64_t>{cce_seed}
                                     : parse_seed_list(cce_seeds);
      bool multi = seeds.size() > 1;
      return fan_out(seeds, std::max(1, cce_jobs), [&](std::uint64_t s) {
        return solve_cce_once(file, cce_eps, cce_val_tol, s, cce_cap, cce_exact,
                              cce_cert, cce_transcript, multi);
      });
    }
    if (verify->parsed()) return run_verify(verify_game, verify_cert);
  } catch (const og::cap_error& e) {
    std::fprintf(stderr, "error: cap: %s\n", e.what());
    return 3;
  } catch (const og::not_realizable_error& e) {
    std::fprintf(stderr, "error: not-realizable: %s\n", e.what());
    return 4;
  } catch (const og::iteration_cap_error& e) {
    std::fprintf(stderr, "error: iteration-cap: %s\n", e.what());
    return 5;
  } catch (const og::input_error& e) {
    std::fprintf(stderr, "error: input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
