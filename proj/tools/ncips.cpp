// Command-line front end: formulas, identity testing, ABPs, witnesses, CNFs,
// F-PC proofs and IPS certificates.
//
// Exit codes: 0 success / accept, 1 reject, 2 usage, parse or resource errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "ncips/abp.hpp"
#include "ncips/formula.hpp"
#include "ncips/pit.hpp"
#include "ncips/proofsys.hpp"
#include "ncips/serialize.hpp"
#include "ncips/transform.hpp"

using namespace ncips;

namespace {

struct Globals {
  std::string field_text;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::optional<std::size_t> term_cap;

  bool json() const { return format == "json"; }
};

/// Ends a command with exit code 1.
struct Reject {
  std::string reason;
  std::string witness;
};

/// Ends a command with exit code 2.
struct UsageError {
  std::string reason;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot open '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// --field if given, else the document's own field, else Q.
Field resolve_field(const Globals& g, const Json* doc) {
  auto parse = [](const std::string& text) {
    try {
      return Field::parse(text);
    } catch (const PreconditionError& e) {
      throw UsageError{e.what()};
    }
  };
  std::optional<Field> flag;
  if (!g.field_text.empty()) flag = parse(g.field_text);
  if (doc && doc->contains("field")) {
    Field own = parse(doc->at("field").get<std::string>());
    if (flag && !(*flag == own))
      throw UsageError{"--field " + flag->name() + " contradicts the input's field " + own.name()};
    return own;
  }
  return flag.value_or(Field::rationals());
}

void emit(const Globals& g, const Json& j, const std::string& text) {
  if (g.json()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
}

// ---------------------------------------------------------------------------
// Formula commands.

struct FormulaArgs {
  std::string input = "-";
  std::optional<std::uint64_t> random_size;
  bool expect_nonzero = false;
  std::string check;
  bool no_balance = false;
};

template <class S>
NcFormula<S> load_formula(const Globals& g, const Field& field, const FormulaArgs& a) {
  if (a.random_size) {
    std::mt19937_64 rng(g.seed);
    return random_formula<S>(field, *a.random_size, rng);
  }
  return parse_formula<S>(field, read_input(a.input));
}

template <class S>
Json formula_json(const NcFormula<S>& f) {
  return Json{{"format", "ncips-formula/1"}, {"field", f.field().name()}, {"formula", print_formula(f)}};
}

template <class S>
Json poly_json(const SparseNcPoly<S>& p) {
  Json terms = Json::array();
  for (const auto& [w, c] : p.terms()) terms.push_back({{"word", word_to_string(w)}, {"coeff", to_string(c)}});
  return terms;
}

template <class S>
void cmd_parse(const Globals& g, const Field& field, const FormulaArgs& a) {
  auto f = load_formula<S>(g, field, a);
  emit(g, formula_json(f), print_formula(f));
}

template <class S>
void cmd_stats(const Globals& g, const Field& field, const FormulaArgs& a) {
  auto f = load_formula<S>(g, field, a);
  auto m = metrics(f);
  Json vars = Json::array();
  for (Var v : variables(f)) vars.push_back(var_name(v));
  auto hom = syntactic_homogeneity(f);
  Json j{{"field", field.name()},
         {"size", m.size},
         {"depth", m.depth},
         {"syntactic_degree", m.syntactic_degree},
         {"variables", vars},
         {"homogeneous", hom.has_value()}};
  std::ostringstream t;
  t << "size " << m.size << "\ndepth " << m.depth << "\nsyntactic degree " << m.syntactic_degree << "\nvariables "
    << vars.size() << "\nhomogeneous " << (hom ? "yes" : "no") << '\n';
  emit(g, j, t.str());
}

template <class S>
void cmd_expand(const Globals& g, const Field& field, const FormulaArgs& a) {
  auto p = expand(load_formula<S>(g, field, a));
  emit(g, Json{{"field", field.name()}, {"terms", poly_json(p)}}, to_string(p));
}

template <class S>
void cmd_pit(const Globals& g, const Field& field, const FormulaArgs& a) {
  auto f = load_formula<S>(g, field, a);
  auto r = identity_test(f);
  Json j{{"zero", r.zero},
         {"components", r.stats.components},
         {"abp_nodes", r.stats.abp_nodes},
         {"abp_edges", r.stats.abp_edges},
         {"max_rank", r.stats.max_rank}};
  std::string text = r.zero ? "zero" : "nonzero";
  std::string witness;
  if (!r.zero) {
    witness = word_to_string(*r.witness);
    j["witness"] = witness;
    j["coefficient"] = to_string(*r.coefficient);
    text += "\nwitness " + witness + " coefficient " + to_string(*r.coefficient);
  }
  emit(g, j, text);
  if (r.zero && a.expect_nonzero) throw Reject{"zero", ""};
  if (!r.zero && !a.expect_nonzero) throw Reject{"nonzero", witness};
}

template <class S>
void cmd_balance(const Globals& g, const Field& field, const FormulaArgs& a) {
  auto f = balance(load_formula<S>(g, field, a));
  Json j = formula_json(f);
  j["size"] = f.size();
  j["depth"] = f.depth();
  emit(g, j, print_formula(f));
}

template <class S>
void cmd_homogenize(const Globals& g, const Field& field, const FormulaArgs& a) {
  auto f = load_formula<S>(g, field, a);
  if (!a.no_balance && static_cast<double>(f.depth()) > balanced_depth_bound(f.size())) f = balance(f);
  auto h = homogenize(f);
  Json parts = Json::array();
  std::ostringstream t;
  for (std::size_t i = 0; i < h.parts.size(); ++i) {
    parts.push_back({{"degree", i}, {"formula", print_formula(h.parts[i])}});
    t << i << ": " << print_formula(h.parts[i]) << '\n';
  }
  emit(g, Json{{"format", "ncips-homogeneous/1"}, {"field", field.name()}, {"parts", parts}}, t.str());
}

template <class S>
void cmd_abp(const Globals& g, const Field& field, const FormulaArgs& a) {
  auto f = load_formula<S>(g, field, a);
  auto [abp, vparts] = homogeneous_abp(f);
  emit(g, abp_to_json(abp, &vparts), abp_to_dot(abp));
}

template <class S>
void cmd_witness(const Globals& g, const Field& field, const FormulaArgs& a) {
  auto f = load_formula<S>(g, field, a);
  if (!a.check.empty()) {
    auto doc = parse_json(read_input(a.check));
    auto w = witness_from_json<S>(doc);
    if (!(w.field == field)) throw UsageError{"witness field " + w.field.name() + " differs from " + field.name()};
    bool ok = verify_witnesses(f, w);
    emit(g, Json{{"accepted", ok}}, ok ? "accepted" : "rejected");
    if (!ok) throw Reject{"witness does not certify the formula", ""};
    return;
  }
  std::cout << witness_to_json(f, extract_witnesses(f)).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Proof-system commands.

struct ProofArgs {
  std::string input = "-";
  std::string prop;
  bool system = false;
  bool dag = false;
};

template <class S>
void cmd_translate(const Globals& g, const Field& field, const ProofArgs& a) {
  if (!a.prop.empty()) {
    auto f = translate_tr<S>(field, parse_prop(a.prop));
    emit(g, formula_json(f), print_formula(f));
    return;
  }
  auto cnf = parse_dimacs(read_input(a.input));
  if (a.system) {
    auto sys = build_axiom_system<S>(cnf, field);
    Json j = system_to_json(sys);
    std::ostringstream t;
    for (std::size_t k = 0; k < sys.axioms.size(); ++k)
      t << 'y' << k + 1 << ' ' << to_string(sys.tags[k]) << ' ' << print_formula(sys.axioms[k]) << '\n';
    emit(g, Json{{"field", field.name()}, {"system", j}}, t.str());
    return;
  }
  Json clauses = Json::array();
  std::ostringstream t;
  for (const auto& q : translate_tr_prime<S>(field, cnf)) {
    clauses.push_back(print_formula(q));
    t << print_formula(q) << '\n';
  }
  emit(g, Json{{"field", field.name()}, {"clauses", clauses}}, t.str());
}

template <class S>
std::pair<FpcProof<S>, AxiomSystem<S>> load_proof(const Json& doc, const Field& field) {
  auto proof = proof_from_json<S>(doc, field);
  auto sys = system_from_json<S>(field, doc.at("system"));
  return {std::move(proof), std::move(sys)};
}

template <class S>
void cmd_fpc_check(const Globals& g, const Field& field, const Json& doc, const ProofArgs& a) {
  auto [proof, sys] = load_proof<S>(doc, field);
  const bool tree_like = !a.dag && proof.tree_like;
  auto r = check_fpc(proof, sys, tree_like);
  Json j{{"accepted", r.ok}, {"lines", proof.lines.size()}, {"size", proof.size()}, {"tree_like", tree_like}};
  if (!r.ok) {
    j["line"] = r.line;
    j["reason"] = r.reason;
  }
  emit(g, j, r.ok ? "accepted (" + std::to_string(proof.lines.size()) + " lines, size " + std::to_string(proof.size()) + ")"
                  : "rejected at line " + std::to_string(r.line) + ": " + r.reason);
  if (!r.ok) throw Reject{"line " + std::to_string(r.line) + ": " + r.reason, ""};
}

template <class S>
void cmd_fpc_to_ips(const Field& field, const Json& doc) {
  auto [proof, sys] = load_proof<S>(doc, field);
  std::optional<IpsCertificate<S>> cert;
  try {
    cert = fpc_to_ips(proof, sys);
  } catch (const PreconditionError& e) {
    throw Reject{e.what(), ""};
  }
  // The certificate is always JSON so that it can be piped into verify.
  std::cout << certificate_to_json(*cert).dump(2) << '\n';
}

template <class S>
void cmd_verify(const Globals& g, const Field& field, const Json& doc) {
  auto cert = certificate_from_json<S>(doc, field);
  auto v = verify_ips_detailed(cert);
  Json j{{"accepted", v.accepted}, {"size", cert.formula.size()}};
  if (!v.accepted) {
    j["reason"] = v.reason;
    j["witness"] = v.witness;
  }
  emit(g, j, v.accepted ? "accepted" : "rejected: " + v.reason + " (witness " + v.witness + ")");
  if (!v.accepted) throw Reject{v.reason, v.witness};
}

int report(const Globals& g, int code, const std::string& status, const std::string& reason,
           const std::string& witness = "") {
  if (g.json()) {
    Json j{{"status", status}, {"reason", reason}};
    if (!witness.empty()) j["witness"] = witness;
    std::cerr << j.dump() << '\n';
  } else {
    std::cerr << status << ": " << reason;
    if (!witness.empty()) std::cerr << " (witness " << witness << ")";
    std::cerr << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncips: non-commutative formulas, identity testing and IPS certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--field", g.field_text, "gf2 | q | zp:<p> (default: the input's field, else q)");
  app.add_option("--format", g.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", g.seed, "seed for generated inputs");
  app.add_option("--term-cap", g.term_cap, "term budget for polynomial expansion (env NCIPS_TERM_CAP)");

  FormulaArgs fa;
  auto formula_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("input", fa.input, "formula file, or - for stdin");
    return c;
  };
  auto* parse = formula_cmd("parse", "parse and print a formula in canonical form");
  parse->add_option("--random", fa.random_size, "print a random formula of this size instead (uses --seed)");
  auto* stats = formula_cmd("stats", "size, depth, syntactic degree, variables");
  auto* expand_cmd = formula_cmd("expand", "expand to a sum of monomials");
  auto* pit = formula_cmd("pit", "deterministic identity test; exit 1 when nonzero");
  pit->add_flag("--expect-zero", "reject when nonzero (the default)");
  pit->add_flag("--expect-nonzero", fa.expect_nonzero, "reject when identically zero instead");
  auto* balance_cmd = formula_cmd("balance", "rebalance to logarithmic depth");
  auto* homogenize_cmd = formula_cmd("homogenize", "homogeneous parts of every degree");
  homogenize_cmd->add_flag("--no-balance", fa.no_balance, "do not balance deep inputs first");
  auto* abp = formula_cmd("abp", "leveled ABP of a homogeneous formula (DOT, or JSON with --format json)");
  auto* witness = formula_cmd("witness", "identity witnesses of a homogeneous zero formula");
  witness->add_option("--check", fa.check, "verify this witness JSON against the formula instead");

  ProofArgs pa;
  auto* translate = app.add_subcommand("translate", "translate a DIMACS CNF (or --prop formula) to polynomials");
  translate->add_option("input", pa.input, "DIMACS file, or - for stdin");
  translate->add_option("--prop", pa.prop, "translate this propositional formula with tr instead");
  translate->add_flag("--system", pa.system, "print the full axiom system with its y-binding");
  auto* fpc_check = app.add_subcommand("fpc-check", "check an F-PC proof");
  fpc_check->add_option("input", pa.input, "proof JSON, or - for stdin");
  fpc_check->add_flag("--dag", pa.dag, "allow premises to be cited more than once");
  auto* fpc_to_ips_cmd = app.add_subcommand("fpc-to-ips", "compile a tree-like refutation to an IPS certificate");
  fpc_to_ips_cmd->add_option("input", pa.input, "proof JSON, or - for stdin");
  auto* verify = app.add_subcommand("verify", "verify an IPS certificate");
  verify->add_option("input", pa.input, "certificate JSON, or - for stdin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::optional<std::size_t> cap = g.term_cap;
    if (!cap) {
      if (const char* env = std::getenv("NCIPS_TERM_CAP")) {
        try {
          cap = std::stoull(env);
        } catch (const std::exception&) {
          throw UsageError{std::string("NCIPS_TERM_CAP is not a number: ") + env};
        }
      }
    }
    if (cap) set_term_cap(*cap);

    const bool json_input = fpc_check->parsed() || fpc_to_ips_cmd->parsed() || verify->parsed();
    Json doc;
    if (json_input) doc = parse_json(read_input(pa.input));
    const Field field = resolve_field(g, json_input ? &doc : nullptr);

    visit_field(field, [&]<class S>(std::type_identity<S>) {
      if (parse->parsed()) cmd_parse<S>(g, field, fa);
      if (stats->parsed()) cmd_stats<S>(g, field, fa);
      if (expand_cmd->parsed()) cmd_expand<S>(g, field, fa);
      if (pit->parsed()) cmd_pit<S>(g, field, fa);
      if (balance_cmd->parsed()) cmd_balance<S>(g, field, fa);
      if (homogenize_cmd->parsed()) cmd_homogenize<S>(g, field, fa);
      if (abp->parsed()) cmd_abp<S>(g, field, fa);
      if (witness->parsed()) cmd_witness<S>(g, field, fa);
      if (translate->parsed()) cmd_translate<S>(g, field, pa);
      if (fpc_check->parsed()) cmd_fpc_check<S>(g, field, doc, pa);
      if (fpc_to_ips_cmd->parsed()) cmd_fpc_to_ips<S>(field, doc);
      if (verify->parsed()) cmd_verify<S>(g, field, doc);
    });
  } catch (const Reject& r) {
    return report(g, 1, "reject", r.reason, r.witness);
  } catch (const UsageError& e) {
    return report(g, 2, "error", e.reason);
  } catch (const ParseError& e) {
    return report(g, 2, "error", std::string("parse error at ") + e.what());
  } catch (const PreconditionError& e) {
    return report(g, 1, "reject", e.what());
  } catch (const Json::exception& e) {
    return report(g, 2, "error", std::string("malformed JSON document: ") + e.what());
  } catch (const std::exception& e) {
    return report(g, 2, "error", e.what());
  }
  return 0;
}
