#include "dyck/suites.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "dyck/alternating.hpp"
#include "dyck/cfl_reach.hpp"
#include "dyck/error.hpp"
#include "dyck/one_letter.hpp"
#include "dyck/oracle.hpp"
#include "dyck/word_lab.hpp"

namespace dyck {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma3", "lemma4", "lemma5", "lemma6", "lemma7", "prop1", "q-validate"};
  return names;
}

std::vector<Instance> gadget_sources(const SuiteConfig& config) {
  std::vector<Instance> out = all_dyck2_sources(2, config.source_edges);
  Rng rng(config.seed);
  for (auto& inst : sample_dyck2_sources(rng, 3, config.sample3, 3)) out.push_back(std::move(inst));
  return out;
}

namespace {

EnumerationBudget budget_of(const SuiteConfig& c) { return {c.max_path_length, c.max_paths, c.max_expansions}; }

std::string describe(const Instance& src) {
  std::ostringstream out;
  out << "source{";
  bool first = true;
  for (const Edge& e : src.graph.stored_edges()) {
    out << (first ? "" : ", ") << e.from << ' ' << src.graph.alphabet().token(e.label) << ' ' << e.to;
    first = false;
  }
  out << "}";
  return out.str();
}

std::string describe(const Walk& w) {
  std::ostringstream out;
  out << "walk " << w.start;
  for (const Step& s : w.steps) out << " -" << format_binary_word(std::span<const Label>(&s.label, 1)) << "-> " << s.to;
  return out.str();
}

class Tally {
 public:
  explicit Tally(SuiteReport& r) : r_(r) {}
  void check(bool ok, const std::function<std::string()>& what) {
    ++r_.checks;
    if (ok) return;
    if (r_.violations++ == 0) r_.counterexample = what();
  }

 private:
  SuiteReport& r_;
};

void stat(SuiteReport& r, std::string key, std::size_t value) { r.stats.emplace_back(std::move(key), std::to_string(value)); }

// Walks between original vertices --------------------------------------------------

void lemma3(const SuiteConfig& c, SuiteReport& r) {
  Tally tally(r);
  std::size_t walks = 0, gadgets = 0;
  for (const Instance& src : gadget_sources(c)) {
    const CompiledReduction red = compile_dyck2_to_undirected(src);
    ++gadgets;
    const VertexId n = src.graph.vertex_count();
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = 0; b < n; ++b) {
        const auto found = enumerate_paths(red.target(), a, b, budget_of(c), LabelPredicate::factor());
        if (found.truncated) ++r.truncated_runs;
        for (const Walk& w : found.walks) {
          ++walks;
          NominalDecomposition d;
          try {
            d = nominal_split(w, red);
          } catch (const Error& e) {
            tally.check(false, [&] { return describe(src) + " " + describe(w) + ": " + e.what(); });
            continue;
          }
          const Word anc = d.ancestor_label();
          tally.check(in_q(anc), [&] { return describe(src) + " " + describe(w) + ": ancestor is not a factor"; });
          if (in_q_init(w.label()))
            tally.check(in_q_init(anc),
                        [&] { return describe(src) + " " + describe(w) + ": ancestor is not a prefix"; });
        }
      }
  }
  stat(r, "gadgets", gadgets);
  stat(r, "walks", walks);
}

void lemma4(const SuiteConfig& c, SuiteReport& r) {
  Tally tally(r);
  const Alphabet d2 = Alphabet::dyck(2);
  std::size_t walks = 0, gadgets = 0, nonempty = 0, longest = 0;
  for (const Instance& src : gadget_sources(c)) {
    const CompiledReduction red = compile_dyck2_to_undirected(src);
    ++gadgets;
    const VertexId n = src.graph.vertex_count();
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = 0; b < n; ++b) {
        const auto found = enumerate_paths(red.target(), a, b, budget_of(c), LabelPredicate::dyck());
        if (found.truncated) ++r.truncated_runs;
        for (const Walk& w : found.walks) {
          ++walks;
          longest = std::max(longest, w.length());
          NominalDecomposition d;
          try {
            d = nominal_decompose(w, red);
          } catch (const Error& e) {
            tally.check(false, [&] { return describe(src) + " " + describe(w) + ": " + e.what(); });
            continue;
          }
          const Word anc = d.ancestor_label();
          if (!anc.empty()) ++nonempty;
          tally.check(mu(anc) == 0, [&] { return describe(src) + " " + describe(w) + ": mu of ancestor is not 0"; });
          tally.check(is_dyck(anc, d2), [&] { return describe(src) + " " + describe(w) + ": ancestor is not Dyck"; });
        }
      }
  }
  stat(r, "gadgets", gadgets);
  stat(r, "dyck_walks", walks);
  stat(r, "nonempty_ancestors", nonempty);
  stat(r, "longest_walk", longest);
}

// Word-level ------------------------------------------------------------------------

void lemma5(const SuiteConfig& c, SuiteReport& r) {
  Tally tally(r);
  const Automaton& varpi = automaton(Regular::Varpi);
  const Automaton& varpi_plus = automaton(Regular::VarpiPlus);
  const Automaton& varpi_minus = automaton(Regular::VarpiMinus);
  std::size_t words = 0, left_in_q = 0, right_in_q = 0;
  Word w;
  for_each_word(4, c.word_length, [&](std::span<const Label> rho) {
    if (!varpi.accepts(rho)) return;
    ++words;
    w.assign({kOne, kZero});
    w.insert(w.end(), rho.begin(), rho.end());
    if (in_q(w)) {
      ++left_in_q;
      const Word red = reduce(w);
      const bool ok = red.size() >= 2 && red[0] == kOne && red[1] == kZero &&
                      varpi_plus.accepts(std::span<const Label>(red).subspan(2));
      tally.check(ok, [&] { return "1 0 . " + format_binary_word(rho) + " reduces outside 1 0 varpi+"; });
    }
    w.assign(rho.begin(), rho.end());
    w.push_back(kZeroBar);
    w.push_back(kOneBar);
    if (in_q(w)) {
      ++right_in_q;
      const Word red = reduce(w);
      const bool ok = red.size() >= 2 && red[red.size() - 2] == kZeroBar && red.back() == kOneBar &&
                      varpi_minus.accepts(std::span<const Label>(red).first(red.size() - 2));
      tally.check(ok, [&] { return format_binary_word(rho) + " . 0bar 1bar reduces outside varpi- 0bar 1bar"; });
    }
  });
  stat(r, "varpi_words", words);
  stat(r, "left_in_q", left_in_q);
  stat(r, "right_in_q", right_in_q);
}

void q_validate(const SuiteConfig& c, SuiteReport& r) {
  Tally tally(r);
  std::size_t factors = 0, prefixes = 0, words = 0;
  for_each_word(4, c.word_length, [&](std::span<const Label> w) {
    ++words;
    const ApproxDyckVerdict oracle = approx_dyck_by_graph(w);
    factors += oracle.factor;
    prefixes += oracle.prefix;
    tally.check(in_q(w) == oracle.factor, [&] { return "Q disagrees on " + format_binary_word(w); });
    tally.check(in_q_init(w) == oracle.prefix, [&] { return "Q_init disagrees on " + format_binary_word(w); });
  });
  stat(r, "words", words);
  stat(r, "factors", factors);
  stat(r, "prefixes", prefixes);
}

// Nominal paths ----------------------------------------------------------------------

void lemma6(const SuiteConfig& c, SuiteReport& r) {
  Tally tally(r);
  const Automaton& varpi = automaton(Regular::Varpi);
  std::size_t loops = 0, throughs = 0, nominal = 0, gadgets = 0;
  auto note = [&r](const PathEnumeration& p) {
    if (p.truncated) ++r.truncated_runs;
  };
  for (const Instance& src : gadget_sources(c)) {
    const CompiledReduction red = compile_dyck2_to_undirected(src);
    ++gadgets;
    for (VertexId x = 0; x < src.graph.vertex_count(); ++x) {
      const auto loop = enumerate_nominal_paths(red, NominalTag::loop(x), budget_of(c));
      note(loop);
      for (const Walk& w : loop.walks) {
        ++loops;
        const Word red_label = reduce(w.label());
        tally.check(varpi.accepts(red_label), [&] { return describe(src) + " " + describe(w) + ": not in varpi"; });
        tally.check(theta(w.label()).is_identity(),
                    [&] { return describe(src) + " " + describe(w) + ": theta is not the identity"; });
      }
      // Every nominal walk leaving x belongs to exactly one class.
      const auto any = enumerate_nominal_paths(red, NominalTag::from(x), budget_of(c));
      note(any);
      for (const Walk& w : any.walks) {
        ++nominal;
        bool ok = true;
        std::string why;
        try {
          const NominalDecomposition d = nominal_split(w, red);
          ok = d.segments.size() == 1;
        } catch (const Error& e) {
          ok = false;
          why = e.what();
        }
        tally.check(ok, [&] { return describe(src) + " " + describe(w) + ": unclassified nominal walk " + why; });
      }
    }
    for (const Edge& e : src.graph.stored_edges()) {
      const auto through = enumerate_nominal_paths(red, NominalTag::through(e), budget_of(c));
      note(through);
      const Automaton& shape = nominal_shape_automaton(e.label);
      const Word& direct = undirected_encoding(e.label);
      bool saw_direct = false;
      const FreeProductElement expected =
          e.label.code % 2 == 0 ? FreeProductElement::gamma() : FreeProductElement::gamma().inverse();
      for (const Walk& w : through.walks) {
        ++throughs;
        const Word label = w.label();
        saw_direct = saw_direct || label == direct;
        tally.check(shape.accepts(reduce(label)),
                    [&] { return describe(src) + " " + describe(w) + ": reduced label outside its shape"; });
        tally.check(theta(label) == expected, [&] { return describe(src) + " " + describe(w) + ": theta image"; });
      }
      tally.check(saw_direct, [&] { return describe(src) + ": direct traversal missing for an edge"; });
    }
  }
  stat(r, "gadgets", gadgets);
  stat(r, "loop_walks", loops);
  stat(r, "through_walks", throughs);
  stat(r, "nominal_walks", nominal);
}

void lemma7(const SuiteConfig& c, SuiteReport& r) {
  Tally tally(r);
  // Distinct reduced labels of chain traversals, per source letter.
  std::array<std::vector<Word>, 4> labels;
  std::array<std::set<Word>, 4> seen;
  for (const Instance& src : gadget_sources(c)) {
    const CompiledReduction red = compile_dyck2_to_undirected(src);
    for (const Edge& e : src.graph.stored_edges()) {
      auto& bucket = labels[e.label.code];
      if (bucket.size() >= c.lemma7_labels) continue;
      const auto through = enumerate_nominal_paths(red, NominalTag::through(e), budget_of(c));
      if (through.truncated) ++r.truncated_runs;
      for (const Walk& w : through.walks) {
        Word red_label = reduce(w.label());
        if (bucket.size() < c.lemma7_labels && seen[e.label.code].insert(red_label).second)
          bucket.push_back(std::move(red_label));
      }
    }
  }
  std::vector<Word> varpi_words;
  for_each_word(4, c.lemma7_varpi_length, [&](std::span<const Label> w) {
    if (in_regular(w, Regular::Varpi)) varpi_words.emplace_back(w.begin(), w.end());
  });

  const Automaton& varpi = automaton(Regular::Varpi);
  auto join = [](const Word& a, const Word& b, const Word& d) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    w.insert(w.end(), d.begin(), d.end());
    return w;
  };
  std::size_t matched_in_q = 0;
  auto matched = [&](const std::vector<Word>& left, const std::vector<Word>& right) {
    for (const Word& a : left)
      for (const Word& b : varpi_words)
        for (const Word& d : right) {
          const Word w = join(a, b, d);
          if (!in_q(w)) {
            ++r.checks;
            continue;
          }
          ++matched_in_q;
          tally.check(varpi.accepts(reduce(w)), [&] {
            return format_binary_word(a) + " | " + format_binary_word(b) + " | " + format_binary_word(d) +
                   " is in Q but reduces outside varpi";
          });
        }
  };
  auto crossed = [&](const std::vector<Word>& left, const std::vector<Word>& right) {
    for (const Word& a : left)
      for (const Word& b : varpi_words)
        for (const Word& d : right) {
          const Word w = join(a, b, d);
          tally.check(!in_q(w), [&] { return format_binary_word(w) + " mixes letters yet is in Q"; });
        }
  };
  // Violations per statement, so a failing run names the one that broke.
  auto part = [&](const std::string& name, auto&& body) {
    const std::size_t before = r.violations;
    body();
    stat(r, name, r.violations - before);
  };
  part("violations_l1_l1bar", [&] { matched(labels[0], labels[1]); });
  part("violations_l2_l2bar", [&] { matched(labels[2], labels[3]); });
  part("violations_l1_l2bar", [&] { crossed(labels[0], labels[3]); });
  part("violations_l2_l1bar", [&] { crossed(labels[2], labels[1]); });
  part("violations_prefix", [&] {
    for (const Word& b : varpi_words)
      for (std::uint32_t code : {1u, 3u})
        for (const Word& d : labels[code]) {
          const Word w = join({}, b, d);
          tally.check(!in_q_init(w), [&] { return format_binary_word(w) + " is a Dyck prefix"; });
        }
  });
  for (std::uint32_t code = 0; code < 4; ++code)
    stat(r, "labels_" + Alphabet::dyck(2).token(Label{code}), labels[code].size());
  stat(r, "varpi_words", varpi_words.size());
  stat(r, "matched_in_q", matched_in_q);
}

// One-letter ------------------------------------------------------------------------

void compare_prop1(Instance& inst, Tally& tally) {
  const ReachIndex idx = solve_dyck(inst);
  const ParityIndex parity = ParityIndex::from_graph(inst.graph);
  const VertexId n = inst.graph.vertex_count();
  for (VertexId s = 0; s < n; ++s)
    for (VertexId t = 0; t < n; ++t) {
      inst.source = s;
      inst.sink = t;
      tally.check(prop1_conditions(inst, parity) == idx.contains(s, t), [&] { return serialize(inst); });
    }
}

void prop1(const SuiteConfig& c, SuiteReport& r) {
  Tally tally(r);
  Rng rng(c.seed);
  const Alphabet a = Alphabet::dyck(1);
  std::uniform_int_distribution<VertexId> size(1, c.prop1_max_vertices);
  std::uniform_real_distribution<double> density(0.1, 0.7);
  for (std::size_t i = 0; i < c.prop1_samples; ++i) {
    Instance inst = random_instance(rng, GraphMode::Undirected, a, size(rng), density(rng));
    compare_prop1(inst, tally);
  }
  std::size_t graphs = 0;
  if (c.prop1_exhaustive4) {
    Instance probe{LabeledGraph(GraphMode::Undirected, a, 4), 0, 0, std::nullopt};
    const std::vector<Edge> candidates = candidate_edges(probe);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << candidates.size()); ++mask) {
      LabeledGraph g(GraphMode::Undirected, a, 4);
      for (std::size_t i = 0; i < candidates.size(); ++i)
        if (mask >> i & 1) g.insert(candidates[i]);
      Instance inst{std::move(g), 0, 0, std::nullopt};
      compare_prop1(inst, tally);
      ++graphs;
    }
  }
  stat(r, "samples", c.prop1_samples);
  stat(r, "exhaustive_graphs", graphs);
}

}  // namespace

SuiteReport run_suite(std::string_view name, const SuiteConfig& config) {
  static const std::map<std::string, void (*)(const SuiteConfig&, SuiteReport&), std::less<>> table{
      {"lemma3", lemma3}, {"lemma4", lemma4}, {"lemma5", lemma5},         {"lemma6", lemma6},
      {"lemma7", lemma7}, {"prop1", prop1},   {"q-validate", q_validate},
  };
  auto it = table.find(name);
  if (it == table.end()) throw PreconditionError("unknown suite '" + std::string(name) + "'");
  SuiteReport report;
  report.name = std::string(name);
  const auto start = std::chrono::steady_clock::now();
  it->second(config, report);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_report(const SuiteReport& report, bool machine) {
  std::ostringstream out;
  if (machine) {
    out << "suite=" << report.name << '\n'
        << "verdict=" << (report.passed() ? "pass" : "fail") << '\n'
        << "checks=" << report.checks << '\n'
        << "violations=" << report.violations << '\n'
        << "truncated_runs=" << report.truncated_runs << '\n';
    for (const auto& [k, v] : report.stats) out << k << '=' << v << '\n';
    if (!report.counterexample.empty()) out << "counterexample=" << report.counterexample << '\n';
    return out.str();
  }
  out << "suite " << report.name << ": " << (report.passed() ? "PASS" : "FAIL") << '\n';
  std::size_t width = 16;
  for (const auto& [k, v] : report.stats) width = std::max(width, k.size() + 2);
  auto row = [&](std::string key, const std::string& value) {
    key.resize(width, ' ');
    out << "  " << key << value << '\n';
  };
  row("checks", std::to_string(report.checks));
  row("violations", std::to_string(report.violations));
  row("truncated runs", std::to_string(report.truncated_runs));
  for (const auto& [k, v] : report.stats) row(k, v);
  if (!report.counterexample.empty()) out << "  counterexample: " << report.counterexample << '\n';
  return out.str();
}

// Equivalence -----------------------------------------------------------------------------

bool source_answer(ReductionKind kind, const Instance& inst) {
  switch (kind) {
    case ReductionKind::AltToNearDyck: return solve_alternating(inst).source_in_fixpoint;
    case ReductionKind::NearDyckToDyck2: {
      const Grammar g = Grammar::near_dyck(inst.graph.alphabet().pairs());
      return solve_cfl(inst, g)[g.start()].test(inst.source, inst.sink);
    }
    case ReductionKind::Dyck2ToUndirected: return answer(solve_dyck(inst), inst);
  }
  return false;
}

bool target_answer(ReductionKind kind, const Instance& target) {
  if (kind == ReductionKind::AltToNearDyck) {
    const Grammar g = Grammar::near_dyck(target.graph.alphabet().pairs());
    return solve_cfl(target, g)[g.start()].test(target.source, target.sink);
  }
  return answer(solve_dyck(target), target);
}

EquivalenceReport verify_equivalence(ReductionKind kind, const Instance& source, std::span<const UpdateOp> script,
                                     bool check_drift) {
  EquivalenceReport rep;
  rep.kind = kind;
  Instance src = source;
  const CompiledReduction red = compile(kind, source);
  Instance target = red.target();
  const TranslationBound bound = translation_bound(kind);
  auto fail = [&rep](std::size_t step, const std::string& what) {
    if (rep.first_failure.empty()) rep.first_failure = "step " + std::to_string(step + 1) + ": " + what;
  };

  for (std::size_t i = 0; i < script.size(); ++i) {
    const UpdateOp& op = script[i];
    if (op.kind == UpdateOp::Kind::Query) {
      const bool s = source_answer(kind, src);
      const bool t = target_answer(kind, target);
      rep.answers.emplace_back(s, t);
      if (s != t) {
        ++rep.mismatches;
        fail(i, std::string("source answers ") + (s ? "true" : "false") + ", target answers " + (t ? "true" : "false"));
      }
      continue;
    }
    const auto ops = red.translate(op);
    rep.translated_counts.push_back(ops.size());
    std::size_t expected_min = bound.min, expected_max = bound.max;
    if (kind == ReductionKind::AltToNearDyck)
      expected_min = expected_max = (*source.partition)[op.edge.from] == Gate::And ? 2 : 1;
    if (ops.size() < expected_min || ops.size() > expected_max) {
      ++rep.bound_violations;
      fail(i, std::to_string(ops.size()) + " target updates");
    }
    apply_in_place(src, op);
    try {
      for (const UpdateOp& t : ops) apply_in_place(target, t);
    } catch (const UpdateError& e) {
      ++rep.drift;
      fail(i, std::string("translated update rejected: ") + e.what());
      target = compile(kind, src).target();
      continue;
    }
    if (check_drift && !(compile(kind, src).target() == target)) {
      ++rep.drift;
      fail(i, "target differs from a fresh compilation");
    }
  }
  return rep;
}

Instance random_source(Rng& rng, ReductionKind kind, VertexId max_vertices) {
  std::uniform_int_distribution<VertexId> size(1, max_vertices);
  std::uniform_real_distribution<double> density(0.1, 0.4);
  const VertexId n = size(rng);
  const double d = density(rng);
  switch (kind) {
    case ReductionKind::AltToNearDyck: return random_alternating(rng, n, d);
    case ReductionKind::NearDyckToDyck2:
      return random_instance(rng, GraphMode::Directed, Alphabet::near_dyck(n), n, d);
    case ReductionKind::Dyck2ToUndirected: return random_instance(rng, GraphMode::Directed, Alphabet::dyck(2), n, d);
  }
  throw PreconditionError("unknown reduction kind");
}

}  // namespace dyck
