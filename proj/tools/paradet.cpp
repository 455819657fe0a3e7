// Command-line front end: determinisation, counting, generation, equivalence
// checking and DOT export, over HOA files on stdin/stdout or named paths.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "paradet/dot.hpp"
#include "paradet/enumerate.hpp"
#include "paradet/full_automaton.hpp"
#include "paradet/history_tree.hpp"
#include "paradet/hoa.hpp"
#include "paradet/lir.hpp"
#include "paradet/nested_tree.hpp"
#include "paradet/oracle.hpp"
#include "paradet/report.hpp"

namespace {

using namespace paradet;

constexpr int kExitPass = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw argument_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw argument_error("cannot open output file: " + path);
  out << text;
}

bool is_nondet_rabin_like(const ParsedHoa& doc) {
  return doc.acceptance == HoaAcceptance::Buchi ||
         (doc.acceptance == HoaAcceptance::Rabin && doc.rabin_pairs.size() <= 1);
}

ParityNpa read_npa(const ParsedHoa& doc) {
  if (is_nondet_rabin_like(doc)) return one_pair_rabin_to_parity(to_one_pair_rabin(doc));
  return to_parity_npa(doc);
}

int run_determinise(const std::string& in_path, const std::string& out_path,
                    const std::string& target, std::size_t max_states, bool max_parity) {
  ParsedHoa doc = parse_hoa(read_input(in_path));
  std::string out;
  if (target == "rabin") {
    DetRabinAutomaton dra = is_nondet_rabin_like(doc)
                                ? determinise_one_pair_rabin(to_one_pair_rabin(doc), max_states)
                                      .automaton
                                : determinise_parity_to_rabin(to_parity_npa(doc), max_states)
                                      .automaton;
    out = print_hoa(dra);
  } else {
    LirDeterminisation det = determinise_parity_to_dpa(read_npa(doc), max_states);
    out = print_hoa(det.automaton, max_parity ? ParityStyle::MaxEven : ParityStyle::MinEven);
  }
  write_output(out_path, out);
  return kExitPass;
}

int run_count(const std::string& what, std::uint32_t n, std::uint32_t c, bool breakdown,
              bool json) {
  if (what == "ht" || what == "rht") {
    BigUint value = what == "ht" ? count_history_trees(n) : count_rhts(n);
    CountReport rep;
    rep.kind = what == "ht" ? "history-trees" : "rhts";
    rep.n = n;
    rep.counts = {{"structures", value}};
    if (json)
      std::cout << count_report_to_json(rep) << "\n";
    else if (breakdown)
      std::cout << count_report_to_table(rep);
    else
      std::cout << value.to_string() << "\n";
    return kExitPass;
  }
  CountReport rep = count_lir_nht_states(n, c);
  if (json)
    std::cout << count_report_to_json(rep) << "\n";
  else if (breakdown)
    std::cout << count_report_to_table(rep);
  else
    std::cout << rep.counts[0].second.to_string() << "\n";
  return kExitPass;
}

int run_check(const std::string& nd_path, const std::string& det_path, const CheckMode& mode) {
  ParsedHoa nd_doc = parse_hoa(read_input(nd_path));
  ParityNpa nd = read_npa(nd_doc);
  ParsedHoa det_doc = parse_hoa(read_input(det_path));
  std::optional<LassoWord> cex;
  switch (det_doc.acceptance) {
    case HoaAcceptance::Rabin:
    case HoaAcceptance::Buchi:
      cex = find_counterexample(nd, to_det_rabin(det_doc), mode);
      break;
    default:
      cex = find_counterexample(nd, to_det_parity(det_doc), mode);
      break;
  }
  if (cex) {
    std::cout << counterexample_to_json(*cex, nd.letters) << "\n";
    return kExitCounterexample;
  }
  std::cerr << "pass\n";
  return kExitPass;
}

int run_dot(const std::string& in_path) {
  ParsedHoa doc = parse_hoa(read_input(in_path));
  switch (doc.acceptance) {
    case HoaAcceptance::Rabin:
    case HoaAcceptance::Buchi:
      try {
        std::cout << export_dot(to_det_rabin(doc));
      } catch (const validation_error&) {
        std::cout << export_dot(to_one_pair_rabin(doc));
      }
      break;
    default:
      try {
        std::cout << export_dot(to_det_parity(doc));
      } catch (const validation_error&) {
        std::cout << export_dot(to_parity_npa(doc));
      }
      break;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"history-tree determinisation of parity, Buchi and one-pair Rabin automata"};
  app.require_subcommand(1);

  // determinise
  auto* det = app.add_subcommand("determinise", "determinise an HOA automaton");
  std::string det_to;
  std::string det_in = "-", det_out = "-";
  std::size_t det_max_states = 1000000;
  bool det_max_parity = false;
  det->add_option("--to", det_to, "target acceptance: rabin or parity")
      ->required()
      ->check(CLI::IsMember({"rabin", "parity"}));
  det->add_option("--in", det_in, "input file (default stdin)");
  det->add_option("--out", det_out, "output file (default stdout)");
  det->add_option("--max-states", det_max_states, "canonical state budget");
  det->add_flag("--max-parity", det_max_parity, "emit max-parity priorities");

  // count
  auto* count = app.add_subcommand("count", "count structures over n states");
  std::string count_what;
  std::uint32_t count_n = 1, count_c = 2;
  bool count_breakdown = false, count_json = false;
  count->add_option("kind", count_what, "ht, rht or lir")
      ->required()
      ->check(CLI::IsMember({"ht", "rht", "lir"}));
  count->add_option("--n", count_n, "number of automaton states")->required();
  count->add_option("--c", count_c, "priority bound (lir only)");
  count->add_flag("--breakdown", count_breakdown, "print the full report table");
  count->add_flag("--json", count_json, "print a JSON report line");

  // gen
  auto* gen = app.add_subcommand("gen", "generate automata");
  bool gen_random = false, gen_full = false;
  GenConfig gen_cfg;
  std::string gen_letters_file, gen_out = "-";
  std::uint32_t gen_n = 2, gen_c = 2;
  gen->add_flag("--random", gen_random, "seeded random parity automaton");
  gen->add_flag("--full", gen_full, "restriction of the full automaton to a letters file");
  gen->add_option("--n", gen_n, "number of states")->required();
  gen->add_option("--c", gen_c, "priority bound")->required();
  gen->add_option("--alphabet", gen_cfg.alphabet_size, "alphabet size (random)");
  gen->add_option("--density", gen_cfg.density, "transition density in [0,1] (random)");
  gen->add_option("--top-prob", gen_cfg.top_probability, "TOP edge probability (random)");
  gen->add_option("--seed", gen_cfg.seed, "generator seed (random)");
  gen->add_option("--letters", gen_letters_file, "letters file (full)");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // check
  auto* check = app.add_subcommand("check", "compare an automaton against a determinisation");
  std::string check_nd, check_det;
  std::vector<std::uint32_t> check_exhaustive;
  std::vector<std::uint32_t> check_sample;
  std::uint64_t check_seed = 1;
  check->add_option("--nd", check_nd, "nondeterministic input automaton")->required();
  check->add_option("--det", check_det, "deterministic automaton")->required();
  check->add_option("--exhaustive", check_exhaustive, "max stem and cycle length")
      ->expected(2);
  check->add_option("--sample", check_sample, "sample count, max stem, max cycle")->expected(3);
  check->add_option("--seed", check_seed, "sampling seed");

  // dot
  auto* dot = app.add_subcommand("dot", "export an automaton as graph text");
  std::string dot_in = "-";
  dot->add_option("--in", dot_in, "input file (default stdin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (det->parsed())
      return run_determinise(det_in, det_out, det_to, det_max_states, det_max_parity);
    if (count->parsed()) {
      if (count_what == "lir" && count->count("--c") == 0)
        throw argument_error("count lir needs --c");
      return run_count(count_what, count_n, count_c, count_breakdown, count_json);
    }
    if (gen->parsed()) {
      if (gen_random == gen_full) throw argument_error("choose exactly one of --random/--full");
      if (gen_random) {
        gen_cfg.n = gen_n;
        gen_cfg.c = gen_c;
        write_output(gen_out, print_hoa(random_npa(gen_cfg)));
      } else {
        if (gen_letters_file.empty()) throw argument_error("--full needs --letters FILE");
        std::vector<FullLetter> letters =
            letters_from_json(read_input(gen_letters_file), gen_n, gen_c);
        write_output(gen_out, print_hoa(induced_npa(letters, gen_n, gen_c)));
      }
      return kExitPass;
    }
    if (check->parsed()) {
      CheckMode mode;
      if (!check_sample.empty() && !check_exhaustive.empty())
        throw argument_error("choose one of --exhaustive/--sample");
      if (!check_sample.empty()) {
        mode.exhaustive = false;
        mode.samples = check_sample[0];
        mode.max_stem = check_sample[1];
        mode.max_cycle = check_sample[2];
        mode.seed = check_seed;
      } else if (!check_exhaustive.empty()) {
        mode.max_stem = check_exhaustive[0];
        mode.max_cycle = check_exhaustive[1];
      }
      return run_check(check_nd, check_det, mode);
    }
    if (dot->parsed()) return run_dot(dot_in);
  } catch (const capacity_error& err) {
    std::cerr << "capacity error: " << err.what() << "\n";
    return kExitCapacity;
  } catch (const error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
