#pragma once

// CNFs and their polynomial translations, the F-PC proof system, the
// compilation of tree-like F-PC refutations into non-commutative IPS
// certificates, and the deterministic certificate verifier.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ncips/errors.hpp"
#include "ncips/formula.hpp"
#include "ncips/pit.hpp"
#include "ncips/transform.hpp"

namespace ncips {

// ---------------------------------------------------------------------------
// CNFs.

struct Cnf {
  std::uint32_t num_vars = 0;
  /// Each clause is a list of nonzero literals; -v is the negation of x_v.
  std::vector<std::vector<int>> clauses;
  friend bool operator==(const Cnf&, const Cnf&) = default;
};

/// Standard DIMACS CNF. Comment lines ("c ...") are skipped; clauses may span lines.
Cnf parse_dimacs(std::string_view text);
std::string print_dimacs(const Cnf& cnf);

/// Whether the 0-1 point satisfies the clause; bit v-1 of `point` is x_v.
bool clause_satisfied(const std::vector<int>& clause, std::uint64_t point);

// ---------------------------------------------------------------------------
// Propositional formulas.

enum class PropKind { variable, truth, falsity, negation, disjunction, conjunction };

struct PropFormula {
  PropKind kind = PropKind::truth;
  std::uint32_t var = 0;
  std::shared_ptr<const PropFormula> a, b;

  static PropFormula variable(std::uint32_t v);
  static PropFormula constant(bool value);
  static PropFormula negation(PropFormula t);
  static PropFormula disjunction(PropFormula l, PropFormula r);
  static PropFormula conjunction(PropFormula l, PropFormula r);
};

/// S-expression syntax: x3, true, false, (not T), (or T T), (and T T).
PropFormula parse_prop(std::string_view text);
std::string print_prop(const PropFormula& t);
bool evaluate_prop(const PropFormula& t, std::uint64_t point);
std::uint32_t prop_num_vars(const PropFormula& t);

/// True over fields where -1 = 1; differences are then written as sums.
inline bool characteristic_two(const Field& field) {
  return field.kind == FieldKind::gf2 || (field.kind == FieldKind::prime && field.modulus == 2);
}

/// a - b, as (+ a b) in characteristic two and (+ a (* -1 b)) otherwise.
template <class S>
NcFormula<S> difference(const NcFormula<S>& a, const NcFormula<S>& b) {
  return characteristic_two(a.field()) ? a + b : a - b;
}

template <class S>
NcFormula<S> one_minus(const NcFormula<S>& f) {
  return difference(NcFormula<S>::constant(f.field(), 1), f);
}

template <class S>
NcFormula<S> translate_tr(const Field& field, const PropFormula& t) {
  switch (t.kind) {
    case PropKind::variable:
      return NcFormula<S>::variable(field, x_var(t.var));
    case PropKind::truth:
      return NcFormula<S>::constant(field, 0);
    case PropKind::falsity:
      return NcFormula<S>::constant(field, 1);
    case PropKind::negation:
      return one_minus(translate_tr<S>(field, *t.a));
    case PropKind::disjunction:
      return translate_tr<S>(field, *t.a) * translate_tr<S>(field, *t.b);
    case PropKind::conjunction:
      return one_minus(one_minus(translate_tr<S>(field, *t.a)) * one_minus(translate_tr<S>(field, *t.b)));
  }
  throw Error("unreachable");
}

/// Literal x -> 1 - x, literal -x -> x; a clause is the left-nested product of its literals.
template <class S>
NcFormula<S> translate_tr_prime(const Field& field, const std::vector<int>& clause) {
  if (clause.empty()) throw PreconditionError("empty clause");
  std::optional<NcFormula<S>> out;
  for (int lit : clause) {
    auto x = NcFormula<S>::variable(field, x_var(static_cast<std::uint32_t>(lit < 0 ? -lit : lit)));
    auto t = lit > 0 ? one_minus(x) : x;
    out = out ? *out * t : t;
  }
  return *out;
}

template <class S>
std::vector<NcFormula<S>> translate_tr_prime(const Field& field, const Cnf& cnf) {
  std::vector<NcFormula<S>> out;
  for (const auto& c : cnf.clauses) out.push_back(translate_tr_prime<S>(field, c));
  return out;
}

// ---------------------------------------------------------------------------
// Axiom systems.

enum class AxiomRole { input, boolean, commutator };

struct AxiomTag {
  AxiomRole role = AxiomRole::input;
  /// input: 1-based position among inputs; boolean: the variable; commutator: i < j.
  std::uint32_t i = 0, j = 0;
  friend bool operator==(const AxiomTag&, const AxiomTag&) = default;
};

std::string to_string(const AxiomTag& tag);

/// Axiom k (0-based) is bound to the variable y_{k+1}.
template <class S>
struct AxiomSystem {
  Field field = Field::rationals();
  std::uint32_t num_vars = 0;
  std::vector<NcFormula<S>> axioms;
  std::vector<AxiomTag> tags;

  std::size_t num_inputs() const {
    std::size_t n = 0;
    for (const auto& t : tags) n += t.role == AxiomRole::input ? 1 : 0;
    return n;
  }
  std::optional<Var> find(const AxiomTag& tag) const {
    for (std::size_t k = 0; k < tags.size(); ++k)
      if (tags[k] == tag) return y_var(static_cast<std::uint32_t>(k + 1));
    return std::nullopt;
  }
  Var input_var(std::uint32_t j) const {
    if (auto v = find({AxiomRole::input, j, 0})) return *v;
    throw PreconditionError("no input axiom " + std::to_string(j));
  }
  Var boolean_var(std::uint32_t i) const {
    if (auto v = find({AxiomRole::boolean, i, 0})) return *v;
    throw PreconditionError("no Boolean axiom for x" + std::to_string(i));
  }
  /// y-variable of C_{i,j} for i < j.
  Var commutator_var(std::uint32_t i, std::uint32_t j) const {
    if (auto v = find({AxiomRole::commutator, i, j})) return *v;
    throw PreconditionError("unbound commutator axiom C_{" + std::to_string(i) + "," + std::to_string(j) + "}");
  }
  const NcFormula<S>& axiom_of(Var y) const {
    if (!is_y_var(y) || var_index(y) == 0 || var_index(y) > axioms.size())
      throw PreconditionError("unbound y-variable " + var_name(y));
    return axioms[var_index(y) - 1];
  }
  const NcFormula<S>& input(std::uint32_t j) const { return axiom_of(input_var(j)); }
};

template <class S>
NcFormula<S> boolean_axiom(const Field& field, std::uint32_t i) {
  auto x = NcFormula<S>::variable(field, x_var(i));
  return x * one_minus(x);
}

template <class S>
NcFormula<S> commutator_axiom(const Field& field, std::uint32_t i, std::uint32_t j) {
  auto xi = NcFormula<S>::variable(field, x_var(i)), xj = NcFormula<S>::variable(field, x_var(j));
  return difference(xi * xj, xj * xi);
}

/// Inputs first, then x_i(1 - x_i) for i = 1..num_vars, then C_{i,j} for 1 <= i < j <= num_vars
/// in lexicographic order.
template <class S>
AxiomSystem<S> build_axiom_system(const Field& field, std::uint32_t num_vars, const std::vector<NcFormula<S>>& inputs) {
  AxiomSystem<S> sys;
  sys.field = field;
  sys.num_vars = num_vars;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (!(inputs[k].field() == field)) throw FieldMismatch("input axiom over a different field");
    for (Var v : variables(inputs[k])) {
      if (is_y_var(v)) throw PreconditionError("input axioms may not mention y-variables");
      if (var_index(v) > num_vars) throw PreconditionError("input axiom mentions " + var_name(v) + " beyond num_vars");
    }
    sys.axioms.push_back(inputs[k]);
    sys.tags.push_back({AxiomRole::input, static_cast<std::uint32_t>(k + 1), 0});
  }
  for (std::uint32_t i = 1; i <= num_vars; ++i) {
    sys.axioms.push_back(boolean_axiom<S>(field, i));
    sys.tags.push_back({AxiomRole::boolean, i, 0});
  }
  for (std::uint32_t i = 1; i <= num_vars; ++i) {
    for (std::uint32_t j = i + 1; j <= num_vars; ++j) {
      sys.axioms.push_back(commutator_axiom<S>(field, i, j));
      sys.tags.push_back({AxiomRole::commutator, i, j});
    }
  }
  return sys;
}

template <class S>
AxiomSystem<S> build_axiom_system(const Cnf& cnf, const Field& field) {
  return build_axiom_system<S>(field, cnf.num_vars, translate_tr_prime<S>(field, cnf));
}

// ---------------------------------------------------------------------------
// F-PC proofs.

enum class Rule { zero, unit, scalar, comm_add, comm_mul, assoc_add, assoc_mul, distrib };
enum class Direction { forward, backward };

const char* rule_name(Rule r);
std::optional<Rule> parse_rule(std::string_view name);

enum class JustKind { input, boolean, product, addition, rewrite };

template <class S>
struct Justification {
  JustKind kind = JustKind::input;
  /// input: clause index (1-based); boolean / product: variable index.
  std::uint32_t index = 0;
  /// 1-based premise line numbers (addition uses both).
  std::size_t premise = 0, premise2 = 0;
  S a{}, b{};
  Rule rule = Rule::zero;
  Direction direction = Direction::forward;
  /// 'L'/'R' steps from the root of the premise.
  std::string path;
};

template <class S>
struct FpcLine {
  NcFormula<S> formula;
  Justification<S> just;
};

template <class S>
struct FpcProof {
  Field field = Field::rationals();
  std::vector<FpcLine<S>> lines;
  bool tree_like = true;

  /// |pi|: total size of all proof lines.
  std::uint64_t size() const {
    std::uint64_t s = 0;
    for (const auto& l : lines) s += l.formula.size();
    return s;
  }
};

struct FpcReport {
  bool ok = true;
  /// 1-based line of the first violation.
  std::size_t line = 0;
  std::string reason;
};

/// 'L'/'R' string to child directions.
std::vector<bool> parse_path(std::string_view path);

namespace detail {

/// a * f with a unit coefficient left implicit.
template <class S>
NcFormula<S> scaled_term(const S& a, const NcFormula<S>& f) {
  return a.is_one() ? f : NcFormula<S>::constant(f.field(), a) * f;
}

/// Empty when (before -> after) is a forward instance of the rule; otherwise why not.
template <class S>
std::optional<std::string> forward_instance(Rule rule, const NcFormula<S>& before, const NcFormula<S>& after) {
  auto is_const = [](const NcFormula<S>& f, bool one) {
    return f.is_constant() && (one ? f.value().is_one() : f.value().is_zero());
  };
  switch (rule) {
    case Rule::zero:
      if (before.is_times() && is_const(before.left(), false) && is_const(after, false)) return std::nullopt;
      return "expected 0*f -> 0";
    case Rule::unit:
      if (before.is_times() && is_const(before.left(), true) && before.right() == after) return std::nullopt;
      return "expected 1*f -> f";
    case Rule::scalar: {
      if (!variables(before).empty()) return "scalar rule needs a variable-free subformula";
      if (!after.is_constant()) return "scalar rule must produce a single constant";
      if (!(evaluate(before, {}) == after.value()))
        return "subformula evaluates to " + to_string(evaluate(before, {})) + ", not " + to_string(after.value());
      return std::nullopt;
    }
    case Rule::comm_add:
      if (before.is_plus() && after.is_plus() && before.left() == after.right() && before.right() == after.left())
        return std::nullopt;
      return "expected f+g -> g+f";
    case Rule::comm_mul:
      if (before.is_times() && after.is_times() && before.left() == after.right() && before.right() == after.left())
        return std::nullopt;
      return "expected f*g -> g*f";
    case Rule::assoc_add:
      if (before.is_plus() && before.right().is_plus() && after.is_plus() && after.left().is_plus() &&
          before.left() == after.left().left() && before.right().left() == after.left().right() &&
          before.right().right() == after.right())
        return std::nullopt;
      return "expected f+(g+h) -> (f+g)+h";
    case Rule::assoc_mul:
      if (before.is_times() && before.right().is_times() && after.is_times() && after.left().is_times() &&
          before.left() == after.left().left() && before.right().left() == after.left().right() &&
          before.right().right() == after.right())
        return std::nullopt;
      return "expected f*(g*h) -> (f*g)*h";
    case Rule::distrib:
      if (before.is_times() && before.right().is_plus() && after.is_plus() && after.left().is_times() &&
          after.right().is_times() && after.left().left() == before.left() && after.right().left() == before.left() &&
          after.left().right() == before.right().left() && after.right().right() == before.right().right())
        return std::nullopt;
      return "expected f*(g+h) -> (f*g)+(f*h)";
  }
  return "unknown rule";
}

}  // namespace detail

/// Checks every line against its justification; reports the first violation.
template <class S>
FpcReport check_fpc(const FpcProof<S>& proof, const AxiomSystem<S>& sys, bool tree_like) {
  const Field field = proof.field;
  std::vector<std::size_t> uses(proof.lines.size(), 0);
  auto fail = [](std::size_t line, std::string why) { return FpcReport{false, line, std::move(why)}; };
  if (!(field == sys.field)) return fail(0, "proof field " + field.name() + " differs from the system's " + sys.field.name());
  for (std::size_t n = 0; n < proof.lines.size(); ++n) {
    const std::size_t line = n + 1;
    const auto& [f, j] = proof.lines[n];
    if (!(f.field() == field)) return fail(line, "formula over a different field");
    auto premise = [&](std::size_t p) -> std::optional<std::string> {
      if (p == 0 || p >= line) return "premise " + std::to_string(p) + " does not precede line " + std::to_string(line);
      if (tree_like && uses[p - 1]++ > 0) return "premise reuse: line " + std::to_string(p) + " is cited twice";
      return std::nullopt;
    };
    switch (j.kind) {
      case JustKind::input: {
        if (j.index == 0 || j.index > sys.num_inputs()) return fail(line, "no input axiom " + std::to_string(j.index));
        if (!(f == sys.input(j.index))) return fail(line, "line is not input axiom " + std::to_string(j.index));
        break;
      }
      case JustKind::boolean: {
        if (j.index == 0 || j.index > sys.num_vars) return fail(line, "no Boolean axiom for x" + std::to_string(j.index));
        if (!(f == boolean_axiom<S>(field, j.index))) return fail(line, "line is not the Boolean axiom of x" + std::to_string(j.index));
        break;
      }
      case JustKind::product: {
        if (auto e = premise(j.premise)) return fail(line, *e);
        if (j.index == 0 || j.index > sys.num_vars)
          return fail(line, "product variable x" + std::to_string(j.index) + " outside x1..x" + std::to_string(sys.num_vars));
        auto expect = NcFormula<S>::variable(field, x_var(j.index)) * proof.lines[j.premise - 1].formula;
        if (!(f == expect)) return fail(line, "line is not x" + std::to_string(j.index) + " * line " + std::to_string(j.premise));
        break;
      }
      case JustKind::addition: {
        if (auto e = premise(j.premise)) return fail(line, *e);
        if (auto e = premise(j.premise2)) return fail(line, *e);
        auto expect = detail::scaled_term(j.a, proof.lines[j.premise - 1].formula) +
                      detail::scaled_term(j.b, proof.lines[j.premise2 - 1].formula);
        if (!(f == expect)) return fail(line, "line is not the stated combination of lines " + std::to_string(j.premise) +
                                                  " and " + std::to_string(j.premise2));
        break;
      }
      case JustKind::rewrite: {
        if (auto e = premise(j.premise)) return fail(line, *e);
        const auto& prev = proof.lines[j.premise - 1].formula;
        std::vector<bool> path;
        GateId at_prev = 0, at_line = 0;
        try {
          path = parse_path(j.path);
          at_prev = gate_id_at(prev, path);
          at_line = gate_id_at(f, path);
        } catch (const Error&) {
          return fail(line, "position '" + j.path + "' does not exist in the premise or the line");
        }
        auto before = subformula_at(prev, at_prev);
        auto after = subformula_at(f, at_line);
        if (!(replace_gate(prev, at_prev, after) == f))
          return fail(line, "line differs from premise " + std::to_string(j.premise) + " outside position '" + j.path + "'");
        auto why = j.direction == Direction::forward ? detail::forward_instance(j.rule, before, after)
                                                     : detail::forward_instance(j.rule, after, before);
        if (why) return fail(line, std::string(rule_name(j.rule)) + " does not apply at position '" + j.path + "': " + *why);
        break;
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Certificates.

/// y-variable bound to C_{i,j}, i < j.
using CommutatorVars = std::function<Var(std::uint32_t, std::uint32_t)>;

/// Standalone numbering of commutator variables: C_{i,j} -> y_{(j-1)(j-2)/2 + i}.
inline Var default_commutator_var(std::uint32_t i, std::uint32_t j) {
  return y_var((j - 1) * (j - 2) / 2 + i);
}

namespace detail {

/// value = negative ? -f : f. Lets signs travel upward so at most one negation is paid.
template <class S>
struct SignedFormula {
  NcFormula<S> f;
  bool negative = false;
};

template <class S>
SignedFormula<S> signed_add(const SignedFormula<S>& a, const SignedFormula<S>& b) {
  if (is_const_zero(a.f)) return b;
  if (is_const_zero(b.f)) return a;
  if (a.negative == b.negative) return {a.f + b.f, a.negative};
  return {a.f + negate(b.f), a.negative};
}

template <class S>
SignedFormula<S> signed_mul_left(const NcFormula<S>& p, const SignedFormula<S>& s) {
  if (is_const_zero(s.f)) return s;
  return {p * s.f, s.negative};
}

template <class S>
SignedFormula<S> signed_mul_right(const SignedFormula<S>& s, const NcFormula<S>& q) {
  if (is_const_zero(s.f)) return s;
  return {s.f * q, s.negative};
}

template <class S>
SignedFormula<S> commutator_rec(const NcFormula<S>& p, const NcFormula<S>& q, const CommutatorVars& comm) {
  const Field field = p.field();
  if (p.is_leaf() && q.is_leaf()) {
    if (!p.is_variable() || !q.is_variable() || p.var() == q.var()) return {NcFormula<S>::constant(field, 0), false};
    if (is_y_var(p.var()) || is_y_var(q.var())) throw PreconditionError("commutator certificates are over x-variables");
    std::uint32_t i = var_index(p.var()), j = var_index(q.var());
    if (i < j) return {NcFormula<S>::variable(field, comm(i, j)), false};
    return {NcFormula<S>::variable(field, comm(j, i)), !characteristic_two(field)};
  }
  if (p.size() >= q.size()) {
    if (p.is_plus()) return signed_add(commutator_rec(p.left(), q, comm), commutator_rec(p.right(), q, comm));
    // P1 (P2 Q - Q P2) + (P1 Q - Q P1) P2
    return signed_add(signed_mul_left(p.left(), commutator_rec(p.right(), q, comm)),
                      signed_mul_right(commutator_rec(p.left(), q, comm), p.right()));
  }
  if (q.is_plus()) return signed_add(commutator_rec(p, q.left(), comm), commutator_rec(p, q.right(), comm));
  // (P Q1 - Q1 P) Q2 + Q1 (P Q2 - Q2 P)
  return signed_add(signed_mul_right(commutator_rec(p, q.left(), comm), q.right()),
                    signed_mul_left(q.left(), commutator_rec(p, q.right(), comm)));
}

}  // namespace detail

/// F(x, y) with F(x, 0) = 0 and F(x, C) = p*q - q*p.
template <class S>
NcFormula<S> commutator_certificate(const NcFormula<S>& p, const NcFormula<S>& q,
                                    const CommutatorVars& comm = default_commutator_var) {
  if (!(p.field() == q.field())) throw FieldMismatch("commutator of formulas over different fields");
  auto s = detail::commutator_rec(p, q, comm);
  return s.negative ? negate(s.f) : s.f;
}

/// Phi with Phi(x, 0) = 0 and Phi(x, C) = li - lj, where li is lj after one comm-mul rewrite at `path`.
template <class S>
NcFormula<S> rewrite_delta(const NcFormula<S>& li, const NcFormula<S>& lj, const std::vector<bool>& path,
                           const CommutatorVars& comm = default_commutator_var) {
  auto bad = [] { return PreconditionError("path does not witness a single comm-mul rewrite"); };
  std::function<NcFormula<S>(const NcFormula<S>&, const NcFormula<S>&, std::size_t)> go =
      [&](const NcFormula<S>& a, const NcFormula<S>& b, std::size_t k) -> NcFormula<S> {
    if (k == path.size()) {
      if (!a.is_times() || !b.is_times() || !(a.left() == b.right()) || !(a.right() == b.left())) throw bad();
      return commutator_certificate(a.left(), a.right(), comm);
    }
    if (a.is_leaf() || a.kind() != b.kind()) throw bad();
    const bool right = path[k];
    const auto& same_a = right ? a.left() : a.right();
    const auto& same_b = right ? b.left() : b.right();
    if (!(same_a == same_b)) throw bad();
    auto inner = go(right ? a.right() : a.left(), right ? b.right() : b.left(), k + 1);
    if (a.is_plus() || is_const_zero(inner)) return inner;
    return right ? same_a * inner : inner * same_a;
  };
  return go(li, lj, 0);
}

template <class S>
struct IpsCertificate {
  NcFormula<S> formula;
  AxiomSystem<S> system;
};

/// Compiles a tree-like refutation line by line. Throws PreconditionError when the proof
/// does not check or does not end in a line computing 1.
template <class S>
IpsCertificate<S> fpc_to_ips(const FpcProof<S>& proof, const AxiomSystem<S>& sys,
                             std::vector<NcFormula<S>>* per_line = nullptr) {
  auto report = check_fpc(proof, sys, true);
  if (!report.ok) throw PreconditionError("proof rejected at line " + std::to_string(report.line) + ": " + report.reason);
  if (proof.lines.empty()) throw PreconditionError("empty proof");
  const Field field = proof.field;
  if (!is_identically_zero(proof.lines.back().formula - NcFormula<S>::constant(field, 1)))
    throw PreconditionError("last line does not compute 1");
  auto comm = [&sys](std::uint32_t i, std::uint32_t j) { return sys.commutator_var(i, j); };
  std::vector<NcFormula<S>> phi;
  for (const auto& [f, j] : proof.lines) {
    switch (j.kind) {
      case JustKind::input:
        phi.push_back(NcFormula<S>::variable(field, sys.input_var(j.index)));
        break;
      case JustKind::boolean:
        phi.push_back(NcFormula<S>::variable(field, sys.boolean_var(j.index)));
        break;
      case JustKind::product:
        phi.push_back(NcFormula<S>::variable(field, x_var(j.index)) * phi[j.premise - 1]);
        break;
      case JustKind::addition:
        phi.push_back(detail::scaled_term(j.a, phi[j.premise - 1]) + detail::scaled_term(j.b, phi[j.premise2 - 1]));
        break;
      case JustKind::rewrite: {
        const auto& prev = phi[j.premise - 1];
        if (j.rule != Rule::comm_mul) {
          phi.push_back(prev);
          break;
        }
        auto delta = rewrite_delta(f, proof.lines[j.premise - 1].formula, parse_path(j.path), comm);
        phi.push_back(is_const_zero(delta) ? prev : prev + delta);
        break;
      }
    }
  }
  if (per_line) *per_line = phi;
  return {phi.back(), sys};
}

struct IpsVerdict {
  bool accepted = false;
  /// Empty on acceptance; otherwise which condition failed.
  std::string reason;
  /// A monomial witnessing the failure, when one was traced.
  std::string witness;
};

template <class S>
std::map<Var, NcFormula<S>> y_substitution(const IpsCertificate<S>& cert, bool zero) {
  std::map<Var, NcFormula<S>> subs;
  for (Var v : variables(cert.formula)) {
    if (!is_y_var(v)) continue;
    subs.emplace(v, zero ? NcFormula<S>::constant(cert.formula.field(), 0) : cert.system.axiom_of(v));
  }
  return subs;
}

/// Deterministic check of both certificate conditions via identity testing.
template <class S>
IpsVerdict verify_ips_detailed(const IpsCertificate<S>& cert) {
  const Field field = cert.formula.field();
  if (!(field == cert.system.field)) throw FieldMismatch("certificate and axiom system use different fields");
  auto at_zero = substitute_vars(cert.formula, y_substitution(cert, true));
  auto r1 = identity_test(at_zero);
  if (!r1.zero) return {false, "condition 1: F(x, 0) is not identically zero", word_to_string(*r1.witness)};
  auto at_axioms = substitute_vars(cert.formula, y_substitution(cert, false));
  auto r2 = identity_test(at_axioms - NcFormula<S>::constant(field, 1));
  if (!r2.zero) return {false, "condition 2: F(x, axioms) is not identically 1", word_to_string(*r2.witness)};
  return {true, "", ""};
}

template <class S>
bool verify_ips(const IpsCertificate<S>& cert) {
  return verify_ips_detailed(cert).accepted;
}

}  // namespace ncips
