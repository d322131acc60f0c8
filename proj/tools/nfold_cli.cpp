#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nfold/json_io.hpp"
#include "nfold/oracle.hpp"
#include "nfold/solver.hpp"

namespace {

using namespace nfold;

// Exit codes: 0 optimal/feasible, 2 infeasible, 3 refused (bound overflow
// in exact mode or an encoder cap), 4 parse/validation error, 1 anything
// unexpected.
constexpr int kExitOptimal = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitRefused = 3;
constexpr int kExitBadInput = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << content;
}

struct SolveFlags {
  std::string mode = "exact";
  i64 gbound = 0;
  std::string alpha = "full";
  bool trace = false;
  bool json = false;
  i64 seed = 0;  // reserved for reproducibility tooling; solving is deterministic

  SolverConfig config() const {
    SolverConfig cfg;
    if (mode == "exact") {
      cfg.mode = SolverConfig::Mode::Exact;
    } else if (mode == "heuristic") {
      cfg.mode = SolverConfig::Mode::Heuristic;
      if (gbound > 0) cfg.heuristic_radius = gbound;
    } else {
      throw io_error("unknown mode '" + mode + "'");
    }
    if (alpha == "full")
      cfg.alpha_strategy = AlphaStrategy::FullSweep;
    else if (alpha == "pow2")
      cfg.alpha_strategy = AlphaStrategy::PowersOfTwoThenRefine;
    else
      throw io_error("unknown alpha strategy '" + alpha + "'");
    cfg.trace_enabled = true;
    return cfg;
  }
};

void add_solve_flags(CLI::App* cmd, SolveFlags& flags) {
  cmd->add_option("--mode", flags.mode, "exact|heuristic")->default_val("exact");
  cmd->add_option("--gbound", flags.gbound, "heuristic search radius");
  cmd->add_option("--alpha", flags.alpha, "full|pow2")->default_val("full");
  cmd->add_flag("--trace", flags.trace, "include the augmentation trace in the report");
  cmd->add_option("--seed", flags.seed, "seed for corpus generation tooling");
  cmd->add_flag("--json", flags.json, "machine-readable JSON report");
}

int report_exit(const SolveReport& rep) {
  switch (rep.status) {
    case SolveStatus::Optimal: return kExitOptimal;
    case SolveStatus::Infeasible: return kExitInfeasible;
    case SolveStatus::Error: return kExitUnexpected;
  }
  return kExitUnexpected;
}

void print_report(const SolveReport& rep, bool json, bool keep_trace) {
  SolveReport shown = rep;
  if (!keep_trace) shown.trace.clear();
  std::cout << (json ? io::report_json(shown) : io::report_text(shown));
  if (json) std::cout << "\n";
}

int cmd_solve(const std::string& path, const SolveFlags& flags) {
  RelationalInstance rel = io::parse_instance(read_file(path));
  ValidationResult val = validate_instance(rel.base);
  if (!val.ok()) {
    for (const auto& v : val.violations) std::cerr << "invalid instance: " << v << "\n";
    return kExitBadInput;
  }
  SolveReport rep = solve(rel, flags.config());
  print_report(rep, flags.json, flags.trace);
  return report_exit(rep);
}

int cmd_oracle(const std::string& path, i64 cap, bool json) {
  RelationalInstance rel = io::parse_instance(read_file(path));
  ValidationResult val = validate_instance(rel.base);
  if (!val.ok()) {
    for (const auto& v : val.violations) std::cerr << "invalid instance: " << v << "\n";
    return kExitBadInput;
  }
  if (const char* env = std::getenv("NFOLD_ORACLE_CAP")) cap = std::strtoll(env, nullptr, 10);
  SolveReport rep;
  try {
    rep = oracle::brute_force_solve(rel, cap);
  } catch (const cap_error& e) {
    std::cerr << "oracle: " << e.what() << "\n";
    return kExitBadInput;
  }
  print_report(rep, json, false);
  return report_exit(rep);
}

struct EncodeFlags {
  std::string out;
  bool chain_solve = false;
  i64 d = 0;
  i64 d2 = 0;
  i64 outliers = 0;
  i64 clusters = 1;
  i64 sigma = 0;
  std::string per_string_d;
  std::string good_strings_path;
  bool farthest_reading = false;
  SolveFlags solve;
};

std::vector<i64> parse_i64_list(const std::string& csv) {
  std::vector<i64> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

int solve_single(const RelationalInstance& rel, const encoders::Decoder& dec,
                 const EncodeFlags& flags) {
  SolveReport rep = solve(rel, flags.solve.config());
  print_report(rep, flags.solve.json, flags.solve.trace);
  if (rep.status != SolveStatus::Optimal) return report_exit(rep);
  // Project back to the encoded coordinates before decoding.
  encoders::DecodedAnswer ans = encoders::decode(dec, rel, *rep.point);
  std::cout << (flags.solve.json ? io::answer_json(ans) + "\n" : io::answer_text(ans));
  return kExitOptimal;
}

int cmd_encode(const std::string& problem, const std::string& path, const EncodeFlags& flags) {
  const std::string out_path = flags.out.empty() ? path + ".encoded.json" : flags.out;
  const std::string dec_path = out_path + ".decoder.json";
  const SolverConfig cfg = flags.solve.config();

  auto emit_single = [&](const RelationalInstance& rel, const encoders::Decoder& dec) -> int {
    write_file(out_path, io::print_instance(rel));
    write_file(dec_path, io::print_decoder(dec));
    std::cerr << "wrote " << out_path << " and " << dec_path << "\n";
    if (flags.chain_solve) return solve_single(rel, dec, flags);
    return kExitOptimal;
  };

  if (problem == "multistrings") {
    auto [rel, dec] = encoders::encode_multi_strings(io::parse_multi_strings(read_file(path)));
    return emit_single(rel, dec);
  }
  if (problem == "wsm") {
    auto [rel, dec] = encoders::encode_wsm(io::parse_wsm(read_file(path)));
    return emit_single(rel, dec);
  }
  if (problem == "bribery-scoring") {
    auto [rel, dec] = encoders::encode_bribery_scoring(io::parse_bribery(read_file(path)));
    return emit_single(rel, dec);
  }
  if (problem == "huge") {
    auto [rel, dec] = encoders::encode_huge_nfold(io::parse_huge(read_file(path)));
    return emit_single(rel, dec);
  }
  if (problem == "bribery-c1") {
    encoders::BriberyInstance br = io::parse_bribery(read_file(path));
    encoders::BriberySchedule sched = encoders::encode_bribery_c1(br);
    std::string body = "{\n  \"schedule\": [\n";
    for (std::size_t s = 0; s < sched.scenarios.size(); ++s) {
      body += io::print_instance(sched.scenarios[s].instance);
      if (s + 1 < sched.scenarios.size()) body += ",";
      body += "\n";
    }
    body += "]}\n";
    write_file(out_path, body);
    std::cerr << "wrote " << out_path << " (" << sched.scenarios.size() << " scenarios)\n";
    if (flags.chain_solve) {
      encoders::BriberyC1Answer ans = encoders::solve_bribery_c1(br, cfg);
      if (!ans.feasible) {
        std::cout << "status: infeasible\n";
        return kExitInfeasible;
      }
      std::cout << (flags.solve.json ? io::answer_json(ans.answer) + "\n"
                                     : io::answer_text(ans.answer));
      return kExitOptimal;
    }
    return kExitOptimal;
  }

  // String presets.
  encoders::StringPresetArgs args;
  args.strings = io::parse_string_lines(read_file(path));
  args.d = flags.d;
  args.d2 = flags.d2;
  args.outliers = flags.outliers;
  args.clusters = flags.clusters;
  args.mismatch_farthest = flags.farthest_reading;
  args.alphabet_size = flags.sigma;
  if (!flags.per_string_d.empty()) args.per_string_d = parse_i64_list(flags.per_string_d);
  if (!flags.good_strings_path.empty())
    args.good_strings = io::parse_string_lines(read_file(flags.good_strings_path));

  encoders::StringProblem sp;
  if (problem == "closest-string") sp = encoders::StringProblem::Closest;
  else if (problem == "farthest-string") sp = encoders::StringProblem::Farthest;
  else if (problem == "neighbor-string") sp = encoders::StringProblem::Neighbor;
  else if (problem == "optimal-consensus") sp = encoders::StringProblem::OptimalConsensus;
  else if (problem == "dss") sp = encoders::StringProblem::Dss;
  else if (problem == "closest-to-most") sp = encoders::StringProblem::ClosestToMost;
  else if (problem == "chrc") sp = encoders::StringProblem::CHrc;
  else if (problem == "d-mismatch") sp = encoders::StringProblem::DMismatch;
  else throw io_error("unknown problem '" + problem + "'");

  encoders::MultiStringsSchedule sched = encoders::string_presets(sp, args);
  if (sched.members.size() == 1 && sched.members.front().parts.size() == 1) {
    auto [rel, dec] = encoders::encode_multi_strings(sched.members.front().parts.front());
    return emit_single(rel, dec);
  }
  std::string body = "{\n  \"schedule\": [\n";
  for (std::size_t m = 0; m < sched.members.size(); ++m) {
    body += "{\"label\": \"" + sched.members[m].label + "\", \"parts\": [\n";
    for (std::size_t p = 0; p < sched.members[m].parts.size(); ++p) {
      auto [rel, dec] = encoders::encode_multi_strings(sched.members[m].parts[p]);
      body += io::print_instance(rel);
      if (p + 1 < sched.members[m].parts.size()) body += ",";
      body += "\n";
    }
    body += "]}";
    if (m + 1 < sched.members.size()) body += ",";
    body += "\n";
  }
  body += "]}\n";
  write_file(out_path, body);
  std::cerr << "wrote " << out_path << " (" << sched.members.size() << " members)\n";
  if (flags.chain_solve) {
    encoders::ScheduleAnswer ans = encoders::solve_schedule(sched, cfg);
    if (!ans.feasible) {
      std::cout << "status: infeasible\n";
      return kExitInfeasible;
    }
    std::cout << "member: " << ans.member << " (" << sched.members[static_cast<std::size_t>(ans.member)].label
              << ")\n";
    for (const auto& part : ans.parts) {
      encoders::DecodedAnswer a = part;
      std::cout << (flags.solve.json ? io::answer_json(a) + "\n" : io::answer_text(a));
    }
    return kExitOptimal;
  }
  return kExitOptimal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial n-fold integer programming toolkit"};
  app.require_subcommand(1);

  std::string solve_path;
  SolveFlags solve_flags;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance file");
  solve_cmd->add_option("file", solve_path, "instance JSON")->required();
  add_solve_flags(solve_cmd, solve_flags);

  std::string oracle_path;
  bool oracle_json = false;
  i64 oracle_cap = nfold::oracle::kDefaultVolumeCap;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force a small instance file");
  oracle_cmd->add_option("file", oracle_path, "instance JSON")->required();
  oracle_cmd->add_option("--cap", oracle_cap, "box volume cap");
  oracle_cmd->add_flag("--json", oracle_json, "machine-readable JSON report");

  std::string encode_problem, encode_path;
  EncodeFlags encode_flags;
  CLI::App* encode_cmd = app.add_subcommand("encode", "encode an application problem");
  encode_cmd->add_option("problem", encode_problem,
                         "multistrings|closest-string|farthest-string|neighbor-string|"
                         "optimal-consensus|dss|closest-to-most|chrc|d-mismatch|"
                         "wsm|bribery-scoring|bribery-c1|huge")
      ->required();
  encode_cmd->add_option("file", encode_path, "application input")->required();
  encode_cmd->add_option("--out", encode_flags.out, "output instance path");
  encode_cmd->add_flag("--solve", encode_flags.chain_solve, "solve and decode after encoding");
  encode_cmd->add_option("--d", encode_flags.d, "distance bound");
  encode_cmd->add_option("--d2", encode_flags.d2, "second distance bound (dss)");
  encode_cmd->add_option("--outliers", encode_flags.outliers, "outlier budget (closest-to-most)");
  encode_cmd->add_option("--clusters", encode_flags.clusters, "cluster count (chrc)");
  encode_cmd->add_option("--sigma", encode_flags.sigma, "source alphabet size (string problems)");
  encode_cmd->add_option("--per-string-d", encode_flags.per_string_d,
                         "comma-separated bounds (neighbor-string)");
  encode_cmd->add_option("--good-strings", encode_flags.good_strings_path,
                         "good strings file (dss)");
  encode_cmd->add_flag("--farthest-reading", encode_flags.farthest_reading,
                       "use the >= d reading of d-mismatch");
  add_solve_flags(encode_cmd, encode_flags.solve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_path, solve_flags);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_path, oracle_cap, oracle_json);
    if (encode_cmd->parsed()) return cmd_encode(encode_problem, encode_path, encode_flags);
  } catch (const nfold::bound_error& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const nfold::cap_error& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const nfold::io_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnexpected;
  }
  return kExitUnexpected;
}
