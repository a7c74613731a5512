// wnconj: element arithmetic, group construction, conjugacy queries, and
// experiment sweeps over the automorphism groups of depth-n rooted binary
// trees. Exit codes: 0 success, 1 usage/internal error, 2 counterexample
// found (sweeps) or replay mismatch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wn/conjugacy.hpp"
#include "wn/f2.hpp"
#include "wn/harness.hpp"
#include "wn/markov.hpp"
#include "wn/subgroup.hpp"
#include "wn/text_format.hpp"
#include "wn/tree_automorphism.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCounterexample = 2;

void print_element(const wn::Aut& a, const std::string& show) {
  if (show == "cycles" || show == "all")
    std::cout << "cycles:   " << wn::to_cycles(a) << "\n";
  if (show == "images" || show == "all")
    std::cout << "images:   " << wn::to_images(a) << "\n";
  if (show == "portrait" || show == "all")
    std::cout << "portrait: " << wn::to_portrait_hex(a) << "\n";
  if (show == "all") {
    std::cout << "depth:    " << a.depth() << "\n";
    std::cout << "order:    " << a.order() << "\n";
    std::cout << "transitive: " << (a.is_transitive() ? "yes" : "no") << "\n";
  }
}

std::string kernel_element_cycles(int depth, wn::F2Vec u) {
  return wn::to_cycles(wn::Aut::from_kernel_vector(depth, u.bits));
}

struct SweepCli {
  std::string kind;
  int n = 2;
  bool exhaustive = false;
  bool sampled = false;
  int samples = 1000;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool markov_g = false;
  bool record_all = false;
  std::string out_dir;
  std::string format = "text";
  std::string config_file;
};

// Simple key=value lines; '#' starts a comment. Keys mirror SweepConfig.
wn::SweepConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  wn::SweepConfig cfg;
  std::string line;
  int lineno = 0;
  auto as_bool = [](const std::string& v) {
    return v == "1" || v == "true" || v == "yes" || v == "on";
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config", "line " + std::to_string(lineno) +
                                                 ": expected key=value");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "depth")
      cfg.depth = std::stoi(val);
    else if (key == "mode")
      cfg.mode = (val == "exhaustive") ? wn::SweepMode::kExhaustive
                                       : wn::SweepMode::kSampled;
    else if (key == "sample_count")
      cfg.sample_count = std::stoi(val);
    else if (key == "seed")
      cfg.seed = std::stoull(val);
    else if (key == "require_same_order")
      cfg.require_same_order = as_bool(val);
    else if (key == "require_trivial_kernel")
      cfg.require_trivial_kernel = as_bool(val);
    else if (key == "require_transitive_h")
      cfg.require_transitive_h = as_bool(val);
    else if (key == "restrict_g_to_markov")
      cfg.restrict_g_to_markov = as_bool(val);
    else if (key == "jobs")
      cfg.jobs = std::stoi(val);
    else if (key == "record_all")
      cfg.record_all = as_bool(val);
    else
      throw CLI::ValidationError("--config", "unknown key: " + key);
  }
  return cfg;
}

int run_sweep(const SweepCli& cli) {
  wn::SweepConfig cfg;
  if (!cli.config_file.empty()) cfg = load_config_file(cli.config_file);
  cfg.depth = cli.n;
  cfg.sample_count = cli.samples;
  cfg.seed = cli.seed;
  cfg.jobs = cli.jobs;
  cfg.restrict_g_to_markov = cli.markov_g || cfg.restrict_g_to_markov;
  cfg.record_all = cli.record_all || cfg.record_all;
  if (cli.exhaustive)
    cfg.mode = wn::SweepMode::kExhaustive;
  else if (cli.sampled)
    cfg.mode = wn::SweepMode::kSampled;
  else if (cli.config_file.empty())
    cfg.mode = cli.n <= 3 ? wn::SweepMode::kExhaustive : wn::SweepMode::kSampled;
  if (cli.kind == "theorem") {
    cfg.require_same_order = true;
    cfg.require_trivial_kernel = true;
  } else if (cli.kind == "conjecture") {
    cfg.require_transitive_h = true;
  }

  wn::SweepReport rep;
  if (cli.kind == "theorem")
    rep = wn::sweep_theorem_1_4(cfg);
  else if (cli.kind == "conjecture")
    rep = wn::sweep_conjecture_6_1(cfg);
  else if (cli.kind == "lemmas")
    rep = wn::verify_lemma_suite(cli.n, cli.jobs, cli.seed);
  else
    throw CLI::ValidationError("sweep", "unknown experiment: " + cli.kind);

  if (!cli.out_dir.empty()) {
    std::string path = wn::write_report(cli.out_dir, rep);
    std::cerr << "report written to " << path << "\n";
  }

  if (cli.format == "jsonl") {
    std::cout << wn::report_to_jsonl(rep);
    std::cout << wn::summary_to_json(rep, false);
  } else {
    std::cout << "experiment:      " << rep.experiment << "\n";
    std::cout << "depth:           " << cfg.depth << "\n";
    std::cout << "mode:            "
              << (cfg.mode == wn::SweepMode::kExhaustive ? "exhaustive"
                                                         : "sampled")
              << "\n";
    std::cout << "pairs:           " << rep.pairs << "\n";
    std::cout << "p_holds:         " << rep.p_holds << "\n";
    std::cout << "counterexamples: " << rep.counterexamples << "\n";
    std::cout << "vacuous:         " << rep.vacuous << "\n";
    for (const wn::LemmaResult& lr : rep.lemmas) {
      std::printf("  %-42s %-8s checked=%lld violations=%lld vacuous=%lld\n",
                  lr.name.c_str(), lr.status().c_str(), lr.checked,
                  lr.violations, lr.vacuous);
    }
    std::printf("wall_seconds:    %.3f\n", rep.wall_seconds);
    for (const wn::PairRecord& rec : rep.records)
      if (rec.verdict == "COUNTEREXAMPLE")
        std::cout << "counterexample: " << wn::record_to_json(rec) << "\n";
  }
  return rep.counterexamples > 0 ? kExitCounterexample : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computations in automorphism groups of rooted binary trees"};
  app.require_subcommand(1);

  // ---- elem ----
  auto* elem = app.add_subcommand("elem", "element arithmetic and conversion");
  int elem_n = 2;
  std::string elem_x, elem_y, elem_show = "all";
  bool elem_inverse = false, elem_project = false;
  long elem_pow = 1;
  elem->add_option("--n", elem_n, "tree depth")->required()
      ->check(CLI::Range(1, wn::kMaxDepth));
  elem->add_option("--x", elem_x, "element (cycles, [images], or portrait hex)")
      ->required();
  elem->add_option("--y", elem_y, "optional right factor: result = x*y");
  elem->add_flag("--inverse", elem_inverse, "invert the result");
  elem->add_option("--pow", elem_pow, "raise the result to this power");
  elem->add_flag("--project", elem_project, "project one level up");
  elem->add_option("--show", elem_show, "cycles|images|portrait|all")
      ->check(CLI::IsMember({"cycles", "images", "portrait", "all"}));

  // ---- group ----
  auto* group = app.add_subcommand("group", "subgroup closure and structure");
  int group_n = 2;
  std::string group_gens, group_show = "order";
  group->add_option("--n", group_n, "tree depth")->required()
      ->check(CLI::Range(1, wn::kMaxDepth));
  group->add_option("--gens", group_gens, "generator list, e.g. \"(1,3,2,4),(1,2)\"")
      ->required();
  group->add_option("--show", group_show,
                    "order|elements|frattini|maximals|centralizer|rank|all")
      ->check(CLI::IsMember({"order", "elements", "frattini", "maximals",
                             "centralizer", "rank", "all"}));

  // ---- conj ----
  auto* conj = app.add_subcommand("conj", "conjugacy deciders for a pair");
  int conj_n = 2;
  std::string conj_h, conj_g, conj_mode = "p";
  conj->add_option("--n", conj_n, "tree depth")->required()
      ->check(CLI::Range(1, wn::kMaxDepth));
  conj->add_option("--H", conj_h, "generators of H")->required();
  conj->add_option("--G", conj_g, "generators of G")->required();
  conj->add_option("--mode", conj_mode, "elem|global|p")
      ->check(CLI::IsMember({"elem", "global", "p"}));

  // ---- markov ----
  auto* markov = app.add_subcommand("markov", "emit the Markov group M_n");
  int markov_n = 2;
  markov->add_option("--n", markov_n, "tree depth")->required()
      ->check(CLI::Range(1, wn::kMaxDepth));

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "experiment sweeps");
  SweepCli sc;
  sweep->add_option("experiment", sc.kind, "theorem|conjecture|lemmas")
      ->required()
      ->check(CLI::IsMember({"theorem", "conjecture", "lemmas"}));
  sweep->add_option("--n", sc.n, "tree depth")->check(CLI::Range(1, wn::kMaxDepth));
  sweep->add_flag("--exhaustive", sc.exhaustive, "enumerate all subgroup pairs (n <= 3)");
  sweep->add_flag("--sampled", sc.sampled, "seeded random pairs");
  sweep->add_option("--samples", sc.samples, "sample count for sampled mode");
  sweep->add_option("--seed", sc.seed, "RNG seed");
  sweep->add_option("--jobs", sc.jobs, "worker threads");
  sweep->add_flag("--markov-g", sc.markov_g, "restrict G to the Markov group");
  sweep->add_flag("--record-all", sc.record_all, "emit a record for every pair");
  sweep->add_option("--out", sc.out_dir, "reports directory");
  sweep->add_option("--format", sc.format, "text|jsonl")
      ->check(CLI::IsMember({"text", "jsonl"}));
  sweep->add_option("--config", sc.config_file, "key=value config file");

  // ---- replay ----
  auto* replay = app.add_subcommand("replay", "re-verify serialized records");
  std::string replay_record, replay_file;
  replay->add_option("--record", replay_record, "a single JSON record line");
  replay->add_option("--file", replay_file, "JSONL file of records");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*elem) {
      wn::Aut a = wn::parse_element(elem_n, elem_x);
      if (!elem_y.empty()) a = a * wn::parse_element(elem_n, elem_y);
      if (elem_pow != 1) a = a.pow(elem_pow);
      if (elem_inverse) a = a.inverse();
      if (elem_project) {
        if (a.depth() == 0) throw std::invalid_argument("cannot project depth 0");
        a = a.project();
      }
      print_element(a, elem_show);
      return kExitOk;
    }

    if (*group) {
      wn::Subgroup g = wn::Subgroup::closure(
          group_n, wn::parse_generator_list(group_n, group_gens));
      if (group_show == "order" || group_show == "all")
        std::cout << "order: " << g.size() << "\n";
      if (group_show == "elements" || group_show == "all")
        for (const wn::Aut& e : g.elements())
          std::cout << wn::to_cycles(e) << "\n";
      if (group_show == "frattini" || group_show == "all") {
        wn::FrattiniData fd = wn::frattini(g);
        std::cout << "frattini order: " << fd.phi.size() << "\n";
        for (const wn::Aut& e : fd.phi.elements())
          std::cout << "  " << wn::to_cycles(e) << "\n";
      }
      if (group_show == "rank" || group_show == "all")
        std::cout << "minimal generators: " << wn::frattini(g).rank << "\n";
      if (group_show == "maximals" || group_show == "all") {
        auto ms = wn::maximal_subgroups(g);
        std::cout << "maximal subgroups: " << ms.size() << "\n";
        for (const wn::Subgroup& m : ms)
          std::cout << "  <" << wn::format_generator_list(m.generators())
                    << "> order " << m.size() << "\n";
      }
      if (group_show == "centralizer" || group_show == "all") {
        wn::Subgroup c = wn::centralizer_in_kernel(g);
        std::cout << "kernel centralizer order: " << c.size() << "\n";
        for (const wn::Aut& e : c.elements())
          std::cout << "  " << wn::to_cycles(e) << "\n";
      }
      return kExitOk;
    }

    if (*conj) {
      wn::Subgroup H = wn::Subgroup::closure(
          conj_n, wn::parse_generator_list(conj_n, conj_h));
      wn::Subgroup G = wn::Subgroup::closure(
          conj_n, wn::parse_generator_list(conj_n, conj_g));
      if (conj_mode == "elem" || conj_mode == "p") {
        auto ew = wn::is_elementwise_conjugate(H, G);
        std::cout << "elementwise: " << (ew.verdict ? "true" : "false") << "\n";
        if (!ew.verdict && ew.failure_witness)
          std::cout << "  no witness for " << wn::to_cycles(*ew.failure_witness)
                    << "\n";
      }
      if (conj_mode == "global" || conj_mode == "p") {
        auto gl = wn::is_globally_conjugate(H, G);
        std::cout << "global: " << (gl.verdict ? "true" : "false") << "\n";
        if (gl.global_witness)
          std::cout << "witness: "
                    << kernel_element_cycles(conj_n, *gl.global_witness)
                    << "  (vector " << gl.global_witness->to_string() << ")\n";
        else if (!gl.verdict && gl.search_exhausted)
          std::cout << "  search exhausted over the kernel\n";
      }
      if (conj_mode == "p") {
        auto r = wn::property_p(H, G);
        std::cout << "p_holds: " << (r.p_holds ? "true" : "false") << "\n";
      }
      return kExitOk;
    }

    if (*markov) {
      wn::MarkovGroupSpec spec = wn::markov_group(markov_n);
      std::cout << "m_" << markov_n << " = " << wn::to_cycles(wn::m_element(markov_n))
                << "\n";
      std::cout << "generators: " << wn::format_generator_list(spec.generators)
                << "\n";
      if (spec.group)
        std::cout << "order: " << spec.group->size() << "\n";
      else
        std::cout << "order: unknown (closure bound exceeded)\n";
      return kExitOk;
    }

    if (*sweep) return run_sweep(sc);

    if (*replay) {
      std::vector<std::string> lines;
      if (!replay_record.empty()) lines.push_back(replay_record);
      if (!replay_file.empty()) {
        std::ifstream in(replay_file);
        if (!in) {
          std::cerr << "error: cannot open " << replay_file << "\n";
          return kExitError;
        }
        std::string line;
        while (std::getline(in, line))
          if (!line.empty()) lines.push_back(line);
      }
      if (lines.empty()) {
        std::cerr << "error: provide --record or --file\n";
        return kExitError;
      }
      bool any_parse_error = false, any_mismatch = false;
      for (std::size_t i = 0; i < lines.size(); ++i) {
        wn::ReplayResult res = wn::replay(lines[i]);
        std::cout << "record " << i + 1 << ": "
                  << (res.parsed ? (res.matches && res.witness_ok ? "ok"
                                                                  : "MISMATCH")
                                 : "PARSE ERROR")
                  << " (" << res.detail << ")\n";
        any_parse_error |= !res.parsed;
        any_mismatch |= res.parsed && !(res.matches && res.witness_ok);
      }
      if (any_parse_error) return kExitError;
      return any_mismatch ? kExitCounterexample : kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
