#pragma once

// Bounded property runs shared by the CLI and the acceptance binary, and
// the side-by-side equivalence check of a reduction under an update script.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dyck/generators.hpp"
#include "dyck/graph.hpp"
#include "dyck/reductions.hpp"

namespace dyck {

struct SuiteConfig {
  std::uint64_t seed = kDefaultSeed;
  // Walk enumeration in gadgets.
  std::size_t max_path_length = 40;
  std::size_t max_paths = 2000;
  std::size_t max_expansions = 400'000;
  // Gadget sources: every 2-vertex dyck(2) graph with at most
  // `source_edges` edges, plus `sample3` random 3-vertex ones.
  std::size_t source_edges = 2;
  std::size_t sample3 = 12;
  // Word-level runs (lemma5, q-validate).
  std::size_t word_length = 10;
  // lemma7: labels kept per source letter, and the varpi words spliced in.
  std::size_t lemma7_labels = 32;
  std::size_t lemma7_varpi_length = 6;
  // prop1.
  std::size_t prop1_samples = 1000;
  VertexId prop1_max_vertices = 6;
  bool prop1_exhaustive4 = true;
};

struct SuiteReport {
  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// Enumerations stopped by max_paths or max_expansions.
  std::size_t truncated_runs = 0;
  std::string counterexample;
  std::vector<std::pair<std::string, std::string>> stats;
  double seconds = 0;

  bool passed() const noexcept { return violations == 0; }
};

/// lemma3, lemma4, lemma5, lemma6, lemma7, prop1, q-validate.
const std::vector<std::string>& suite_names();
/// Throws PreconditionError on an unknown name.
SuiteReport run_suite(std::string_view name, const SuiteConfig& config);

std::vector<Instance> gadget_sources(const SuiteConfig& config);

/// Plain text, or one key=value per line when `machine`.
std::string format_report(const SuiteReport& report, bool machine);

// Reduction equivalence -------------------------------------------------------------

struct EquivalenceReport {
  ReductionKind kind{};
  /// (source answer, target answer) per query.
  std::vector<std::pair<bool, bool>> answers;
  /// Number of target updates per source edge update.
  std::vector<std::size_t> translated_counts;
  std::size_t mismatches = 0;
  std::size_t bound_violations = 0;
  /// Steps where the updated target differs from compiling the updated source.
  std::size_t drift = 0;
  std::string first_failure;

  bool passed() const noexcept { return mismatches == 0 && bound_violations == 0 && drift == 0; }
};

/// The source answer of a reduction kind's input instance.
bool source_answer(ReductionKind kind, const Instance& inst);
/// The answer on a compiled target.
bool target_answer(ReductionKind kind, const Instance& target);

/// Replays `script` on the source and, through translate, on the compiled
/// target; compares answers at each query and the per-op counts with the
/// kind's bound. With `check_drift`, also compares the target with a fresh
/// compilation after every edge update.
EquivalenceReport verify_equivalence(ReductionKind kind, const Instance& source, std::span<const UpdateOp> script,
                                     bool check_drift = true);

/// Random source instance for a kind within the given vertex cap.
Instance random_source(Rng& rng, ReductionKind kind, VertexId max_vertices);

}  // namespace dyck
