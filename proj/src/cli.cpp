#include "falc/cli.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "falc/error.hpp"
#include "falc/fca.hpp"
#include "falc/modelgen.hpp"
#include "falc/oracle.hpp"
#include "falc/syntax.hpp"
#include "falc/tableau.hpp"
#include "falc/unravel.hpp"

namespace falc {

namespace {

inline constexpr const char* kVersion = "0.1.0";

struct Globals {
  std::string format = "table";
  bool infer = false;
  std::optional<std::uint64_t> seed;
};

KnowledgeBase load(const std::string& path, const Globals& g) {
  ParseOptions opts;
  opts.infer_declarations = g.infer;
  return load_kb(path, opts);
}

bool kv(const Globals& g) { return g.format == "kv"; }

void print_relations(std::ostream& out, const Context& ctx) {
  const Algebra& alg = ctx.algebra();
  out << relation_table(alg, "I", ctx.objects(), ctx.features(), ctx.incidence);
  for (const auto& [role, rel] : ctx.box) {
    out << '\n' << relation_table(alg, role, ctx.objects(), ctx.features(), rel);
  }
  for (const auto& [role, rel] : ctx.dia) {
    out << '\n' << relation_table(alg, role, ctx.features(), ctx.objects(), rel);
  }
}

void print_relations_kv(std::ostream& out, const Context& ctx) {
  const Algebra& alg = ctx.algebra();
  auto dump = [&](const std::string& title, const std::vector<std::string>& rows,
                  const std::vector<std::string>& cols, const Relation& rel) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        out << title << '(' << rows[r] << ',' << cols[c] << ")=" << alg.name(rel.at(r, c)) << '\n';
      }
    }
  };
  dump("I", ctx.objects(), ctx.features(), ctx.incidence);
  for (const auto& [role, rel] : ctx.box) dump(role, ctx.objects(), ctx.features(), rel);
  for (const auto& [role, rel] : ctx.dia) dump(role, ctx.features(), ctx.objects(), rel);
}

void print_interpretation(std::ostream& out, const Interpretation& m, const Globals& g) {
  const Algebra& alg = m.algebra();
  if (kv(g)) {
    out << "objects=" << m.context.objects().size() << '\n';
    out << "features=" << m.context.features().size() << '\n';
    print_relations_kv(out, m.context);
    for (const auto& [name, c] : m.primitives) {
      out << "extent(" << name << ")=" << format_set(alg, c.extent) << '\n';
      out << "intent(" << name << ")=" << format_set(alg, c.intent) << '\n';
    }
    return;
  }
  print_relations(out, m.context);
  out << '\n';
  out << print_model_block(alg, block_from_interpretation(m));
}

int cmd_check(const Globals& g, const std::string& file, bool trace, bool completion,
              bool emit_expanded, std::size_t cap, std::ostream& out) {
  const KnowledgeBase kb = load(file, g);
  const KnowledgeBase flat = expand(kb);
  if (emit_expanded) out << print_kb(flat) << '\n';
  TableauOptions opts;
  opts.record_trace = trace;
  opts.shuffle_seed = g.seed;
  opts.fact_cap = cap;
  Tableau tab(flat, opts);
  const bool ok = tab.saturate();
  const TableauStats st = tab.stats();
  const Algebra& alg = tab.algebra();
  if (kv(g)) {
    out << "verdict=" << (ok ? "consistent" : "inconsistent") << '\n';
    if (!ok) {
      const Clash& c = tab.clashes().front();
      out << "clash.term=" << tab.term_str(c.term) << '\n';
      out << "clash.positive=" << alg.name(c.positive) << '\n';
      out << "clash.negative=" << alg.name(c.negative) << '\n';
    }
    out << "facts.positive=" << st.positive_facts << '\n';
    out << "facts.negative=" << st.negative_facts << '\n';
    out << "constants=" << st.constants << '\n';
    out << "steps=" << st.steps << '\n';
    for (const auto& [rule, n] : st.rule_histogram) out << "rule." << rule << '=' << n << '\n';
  } else {
    out << "verdict: " << (ok ? "consistent" : "inconsistent") << '\n';
    if (!ok) {
      const Clash& c = tab.clashes().front();
      out << "clash: " << tab.term_str(c.term) << " positive " << alg.name(c.positive)
          << " negative " << alg.name(c.negative) << '\n';
    }
    out << "facts: " << st.positive_facts << " positive, " << st.negative_facts << " negative\n";
    out << "constants: " << st.constants << '\n';
    out << "steps: " << st.steps << '\n';
    out << "rules:\n";
    for (const auto& [rule, n] : st.rule_histogram) out << "  " << rule << ' ' << n << '\n';
  }
  if (trace) {
    out << "trace:\n";
    for (std::size_t i = 0; i < tab.trace().size(); ++i) {
      out << "  " << i + 1 << ". " << tab.trace_row_str(tab.trace()[i]) << '\n';
    }
  }
  if (completion) {
    out << "completion:\n";
    for (TermId t = 0; t < tab.term_count(); ++t) {
      if (auto p = tab.positive(t)) out << "  " << tab.fact_str({t, *p, Polarity::Positive}) << '\n';
      for (Elem n : tab.negative(t)) out << "  " << tab.fact_str({t, n, Polarity::Negative}) << '\n';
    }
  }
  return ok ? kExitOk : kExitNegative;
}

int cmd_trace(const Globals& g, const std::string& file, std::ostream& out) {
  const KnowledgeBase flat = expand(load(file, g));
  TableauOptions opts;
  opts.record_trace = true;
  opts.shuffle_seed = g.seed;
  Tableau tab(flat, opts);
  const bool ok = tab.saturate();
  for (std::size_t i = 0; i < tab.trace().size(); ++i) {
    out << i + 1 << ". " << tab.trace_row_str(tab.trace()[i]) << '\n';
  }
  return ok ? kExitOk : kExitNegative;
}

int cmd_model(const Globals& g, const std::string& file, std::ostream& out, std::ostream& err) {
  const KnowledgeBase kb = load(file, g);
  TableauOptions opts;
  opts.shuffle_seed = g.seed;
  Tableau tab(expand(kb), opts);
  if (!tab.saturate()) {
    const Clash& c = tab.clashes().front();
    err << "inconsistent: no model (clash on " << tab.term_str(c.term) << ")\n";
    return kExitNegative;
  }
  const Interpretation m = extract_model(tab, kb);
  print_interpretation(out, m, g);
  const SoundnessReport report = verify_soundness(m, kb, tab);
  if (!report.ok()) {
    err << report.describe();
    return kExitNegative;
  }
  return kExitOk;
}

int cmd_oracle(const Globals& g, const std::string& file, const OracleBounds& bounds,
               std::ostream& out) {
  const KnowledgeBase kb = load(file, g);
  const OracleResult r = find_model(kb, bounds);
  const bool found = r.status == OracleStatus::Found;
  if (kv(g)) {
    out << "status=" << (found ? "found" : "none-within-bounds") << '\n';
    out << "visited=" << r.visited << '\n';
  } else {
    out << "status: " << (found ? "found" : "none-within-bounds") << '\n';
    out << "visited: " << r.visited << '\n';
  }
  if (found) print_interpretation(out, *r.model, g);
  return found ? kExitOk : kExitNegative;
}

int cmd_lattice(const Globals& g, const std::string& file, bool dot, std::ostream& out) {
  const KnowledgeBase kb = load(file, g);
  const Interpretation m = interpretation_from_block(kb);
  const ConceptLattice lat = enumerate_concepts(m.context);
  out << (dot ? lattice_dot(m.context, lat) : lattice_text(m.context, lat));
  return kExitOk;
}

int cmd_expand(const Globals& g, const std::string& file, std::ostream& out) {
  ExpansionStats st;
  const KnowledgeBase flat = expand(load(file, g), &st);
  out << print_kb(flat);
  return kExitOk;
}

int cmd_modelcheck(const Globals& g, const std::string& file, std::ostream& out) {
  const KnowledgeBase kb = load(file, g);
  Interpretation m = interpretation_from_block(kb);
  // Defined names the block leaves open take the value of their definition.
  std::set<std::string> given;
  for (const auto& e : kb.model->extents) given.insert(e.name);
  for (const auto& c : kb.model->classified) given.insert(c.name);
  apply_definitions(m, kb.tbox, given);
  const KbReport sat = check_kb(m, kb.abox, kb.tbox);
  const CompatibilityReport comp = check_compatibility(m.context);
  const Algebra& alg = m.algebra();
  std::vector<std::string> classify;
  if (kb.model) {
    for (const auto& c : kb.model->classified) {
      const auto pc = m.primitives.find(c.name);
      const auto a = m.context.object_index(c.object);
      const auto x = m.context.feature_index(c.feature);
      if (pc == m.primitives.end() || !a || !x) continue;
      for (std::size_t b = 0; b < m.context.objects().size(); ++b) {
        if (pc->second.extent[b] != m.context.incidence.at(b, *x)) {
          classify.push_back(c.name + " extent at " + m.context.objects()[b] + " is " +
                             alg.name(pc->second.extent[b]) + " but I(" + m.context.objects()[b] +
                             ", " + c.feature + ") is " + alg.name(m.context.incidence.at(b, *x)));
        }
      }
      for (std::size_t y = 0; y < m.context.features().size(); ++y) {
        if (pc->second.intent[y] != m.context.incidence.at(*a, y)) {
          classify.push_back(c.name + " intent at " + m.context.features()[y] + " is " +
                             alg.name(pc->second.intent[y]) + " but I(" + c.object + ", " +
                             m.context.features()[y] + ") is " + alg.name(m.context.incidence.at(*a, y)));
        }
      }
    }
  }
  const char* sep = kv(g) ? "=" : ": ";
  out << "satisfaction" << sep << (sat.ok() ? "ok" : "fail") << '\n';
  for (const auto& f : sat.failures) out << "  " << f << '\n';
  out << "compatibility" << sep << (comp.ok ? "ok" : "fail") << '\n';
  if (!comp.ok) out << "  " << comp.describe(m.context) << '\n';
  out << "classifying" << sep << (classify.empty() ? "ok" : "fail") << '\n';
  for (const auto& f : classify) out << "  " << f << '\n';
  return sat.ok() && comp.ok && classify.empty() ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tableau reasoner and formal concept analysis toolkit", "falc"};
  app.require_subcommand(0, 1);
  Globals g;
  std::uint64_t seed = 0;
  bool version = false;
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"table", "kv"}));
  app.add_flag("--infer-decls", g.infer, "Infer undeclared names from their first use");
  auto* seed_opt = app.add_option("--seed", seed, "Shuffle the tableau worklist with this seed");
  app.add_flag("--version", version, "Print version and rule-set revision");

  std::string file;
  auto* check = app.add_subcommand("check", "Decide ABox consistency");
  bool trace = false;
  bool completion = false;
  bool emit_expanded = false;
  std::size_t cap = 0;
  check->add_option("file", file)->required();
  check->add_flag("--trace", trace, "Print the rule trace");
  check->add_flag("--emit-completion", completion, "Print every stored fact");
  check->add_flag("--emit-expanded", emit_expanded, "Print the unraveled knowledge base");
  check->add_option("--cap", cap, "Fact cap (0 selects the default)");

  auto* model = app.add_subcommand("model", "Print the model extracted from a clash-free completion");
  model->add_option("file", file)->required();

  auto* tr = app.add_subcommand("trace", "Print the rule trace only");
  tr->add_option("file", file)->required();

  OracleBounds bounds;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive search for a small model");
  oracle->add_option("file", file)->required();
  oracle->add_option("--max-obj", bounds.max_objects, "Largest object domain")->capture_default_str();
  oracle->add_option("--max-feat", bounds.max_features, "Largest feature domain")->capture_default_str();
  oracle->add_option("--budget", bounds.budget, "Candidate budget")->capture_default_str();

  bool dot = false;
  auto* lattice = app.add_subcommand("lattice", "Concept lattice and modal operator tables of a model block");
  lattice->add_option("file", file)->required();
  lattice->add_flag("--dot", dot, "Graphviz output of the Hasse diagram");

  auto* exp = app.add_subcommand("expand", "Unravel the TBox into the ABox");
  exp->add_option("file", file)->required();

  auto* mc = app.add_subcommand("modelcheck", "Check a model block against the knowledge base");
  mc->add_option("file", file)->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  if (*seed_opt) g.seed = seed;

  if (version) {
    out << "falc " << kVersion << " rules " << rule_set_revision() << '\n';
    return kExitOk;
  }

  try {
    if (*check) return cmd_check(g, file, trace, completion, emit_expanded, cap, out);
    if (*model) return cmd_model(g, file, out, err);
    if (*tr) return cmd_trace(g, file, out);
    if (*oracle) return cmd_oracle(g, file, bounds, out);
    if (*lattice) return cmd_lattice(g, file, dot, out);
    if (*exp) return cmd_expand(g, file, out);
    if (*mc) return cmd_modelcheck(g, file, out);
  } catch (const Error& e) {
    err << "error[" << category(e.kind()) << "]: " << e.what() << '\n';
    return is_limit(e.kind()) ? kExitLimit : kExitInputError;
  }
  out << app.help();
  return kExitInputError;
}

}  // namespace falc
