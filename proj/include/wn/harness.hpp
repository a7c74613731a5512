#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wn/conjugacy.hpp"
#include "wn/subgroup.hpp"

namespace wn {

enum class SweepMode { kExhaustive, kSampled };

struct SweepConfig {
  int depth = 2;
  SweepMode mode = SweepMode::kExhaustive;
  int sample_count = 1000;
  std::uint64_t seed = 0;
  // Pair filters (hypothesis flags).
  bool require_same_order = false;
  bool require_trivial_kernel = false;
  bool require_transitive_h = false;
  bool restrict_g_to_markov = false;
  int jobs = 1;
  // Emit one record per pair rather than only counterexamples. Exhaustive
  // sweeps default to counts-only output.
  bool record_all = false;
};

struct PairRecord {
  int depth = 0;
  std::vector<Aut> h_gens, g_gens;
  PropertyPReport report;
  std::string verdict;  // P_HOLDS | COUNTEREXAMPLE | VACUOUS
};

struct LemmaResult {
  std::string name;
  long long checked = 0;
  long long violations = 0;
  long long vacuous = 0;
  std::string status() const {
    if (violations > 0) return "FAIL";
    return checked > 0 ? "PASS" : "VACUOUS";
  }
};

struct SweepReport {
  std::string experiment;
  SweepConfig config;
  long long pairs = 0;
  long long p_holds = 0;
  long long counterexamples = 0;
  long long vacuous = 0;
  std::vector<PairRecord> records;
  std::vector<LemmaResult> lemmas;
  double wall_seconds = 0;
};

// Exhaustive (n <= 3) or seeded sampled sweep over subgroup pairs meeting
// the hypotheses |H| = |G|, trivial kernel intersection of H. H is reduced
// up to kernel conjugacy in exhaustive mode.
SweepReport sweep_theorem_1_4(const SweepConfig& config);

// H restricted to subgroups with a transitive element; G unrestricted, or
// the Markov group when configured.
SweepReport sweep_conjecture_6_1(const SweepConfig& config);

// Every lemma/proposition checker over its hypothesis-satisfying instance
// space at depth n (exhaustive for n <= 3; vector instances sampled where
// the space is large).
SweepReport verify_lemma_suite(int n, int jobs = 1, std::uint64_t seed = 0);

// Serialization: line-delimited records plus a summary object. Byte-stable
// across runs and parallelism degrees for identical configs.
std::string record_to_json(const PairRecord& rec);
PairRecord record_from_json(const std::string& line);
std::string report_to_jsonl(const SweepReport& rep);
std::string summary_to_json(const SweepReport& rep, bool include_timing);

std::string subgroup_to_json(const Subgroup& g);
Subgroup subgroup_from_json(const std::string& text);

struct ReplayResult {
  bool parsed = false;
  bool matches = false;     // re-run verdicts equal the stored ones
  bool witness_ok = false;  // stored witness verifies by direct conjugation
  std::string detail;
};

// Reconstructs the pair from a serialized record and re-runs the deciders.
ReplayResult replay(const std::string& record_line);

// Writes reports/<experiment>/<timestamp>-<seed>.jsonl and summary.json
// under out_dir; returns the jsonl path.
std::string write_report(const std::string& out_dir, const SweepReport& rep);

// One representative per K_n-conjugacy class, deterministic order.
std::vector<Subgroup> kernel_conjugacy_classes(const std::vector<Subgroup>& subs);

}  // namespace wn
