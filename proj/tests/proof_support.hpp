#pragma once

// Proof construction helpers shared by the proofsys and acceptance suites.

#include <optional>
#include <string>
#include <vector>

#include "ncips/proofsys.hpp"

namespace ncips::testing {

/// The forward instance of `rule` rooted at `f`, if the rule applies there.
template <class S>
std::optional<NcFormula<S>> apply_forward(Rule rule, const NcFormula<S>& f) {
  const Field field = f.field();
  auto is_const = [](const NcFormula<S>& g, bool one) {
    return g.is_constant() && (one ? g.value().is_one() : g.value().is_zero());
  };
  switch (rule) {
    case Rule::zero:
      if (f.is_times() && is_const(f.left(), false)) return NcFormula<S>::constant(field, 0);
      break;
    case Rule::unit:
      if (f.is_times() && is_const(f.left(), true)) return f.right();
      break;
    case Rule::scalar:
      if (!f.is_constant() && variables(f).empty()) return NcFormula<S>::constant(field, evaluate(f, {}));
      break;
    case Rule::comm_add:
      if (f.is_plus()) return f.right() + f.left();
      break;
    case Rule::comm_mul:
      if (f.is_times()) return f.right() * f.left();
      break;
    case Rule::assoc_add:
      if (f.is_plus() && f.right().is_plus()) return (f.left() + f.right().left()) + f.right().right();
      break;
    case Rule::assoc_mul:
      if (f.is_times() && f.right().is_times()) return (f.left() * f.right().left()) * f.right().right();
      break;
    case Rule::distrib:
      if (f.is_times() && f.right().is_plus()) return f.left() * f.right().left() + f.left() * f.right().right();
      break;
  }
  return std::nullopt;
}

/// Every position of f as an L/R string, in pre-order.
template <class S>
std::vector<std::string> all_paths(const NcFormula<S>& f) {
  std::vector<std::string> out;
  std::function<void(const NcFormula<S>&, std::string)> go = [&](const NcFormula<S>& g, std::string p) {
    out.push_back(p);
    if (g.is_leaf()) return;
    go(g.left(), p + "L");
    go(g.right(), p + "R");
  };
  go(f, "");
  return out;
}

template <class S>
NcFormula<S> replace_at(const NcFormula<S>& f, const std::string& path, const NcFormula<S>& g) {
  return replace_gate(f, gate_id_at(f, parse_path(path)), g);
}

template <class S>
NcFormula<S> at_path(const NcFormula<S>& f, const std::string& path) {
  return subformula_at(f, gate_id_at(f, parse_path(path)));
}

/// Appends justified lines, computing each line's formula. Line numbers are 1-based.
template <class S>
class ProofBuilder {
 public:
  ProofBuilder(const AxiomSystem<S>& sys) : sys_(sys) { proof_.field = sys.field; }

  std::size_t input(std::uint32_t j) {
    Justification<S> just;
    just.kind = JustKind::input;
    just.index = j;
    return push(sys_.input(j), just);
  }
  std::size_t boolean(std::uint32_t i) {
    Justification<S> just;
    just.kind = JustKind::boolean;
    just.index = i;
    return push(boolean_axiom<S>(sys_.field, i), just);
  }
  std::size_t product(std::uint32_t r, std::size_t p) {
    Justification<S> just;
    just.kind = JustKind::product;
    just.index = r;
    just.premise = p;
    return push(NcFormula<S>::variable(sys_.field, x_var(r)) * line(p), just);
  }
  std::size_t addition(const S& a, std::size_t p, const S& b, std::size_t q) {
    Justification<S> just;
    just.kind = JustKind::addition;
    just.a = a;
    just.b = b;
    just.premise = p;
    just.premise2 = q;
    return push(detail::scaled_term(a, line(p)) + detail::scaled_term(b, line(q)), just);
  }
  std::size_t addition(std::size_t p, std::size_t q) {
    return addition(one<S>(sys_.field), p, one<S>(sys_.field), q);
  }
  /// Forward rewrite at `path`; throws when the rule does not apply there.
  std::size_t rewrite(Rule rule, const std::string& path, std::size_t p) {
    auto after = apply_forward(rule, at_path(line(p), path));
    if (!after) throw PreconditionError(std::string(rule_name(rule)) + " does not apply at '" + path + "'");
    return rewrite_to(rule, Direction::forward, path, p, replace_at(line(p), path, *after));
  }
  std::size_t rewrite_to(Rule rule, Direction dir, const std::string& path, std::size_t p, const NcFormula<S>& f) {
    Justification<S> just;
    just.kind = JustKind::rewrite;
    just.rule = rule;
    just.direction = dir;
    just.path = path;
    just.premise = p;
    return push(f, just);
  }

  const NcFormula<S>& line(std::size_t n) const { return proof_.lines.at(n - 1).formula; }
  const FpcProof<S>& proof() const { return proof_; }

 private:
  std::size_t push(NcFormula<S> f, Justification<S> just) {
    proof_.lines.push_back({std::move(f), std::move(just)});
    return proof_.lines.size();
  }

  AxiomSystem<S> sys_;
  FpcProof<S> proof_;
};

/// CNF with n >= 2 variables: {x1}, {not x1}, {x2 or ... or xn}.
inline Cnf contradiction_cnf(std::uint32_t n) {
  Cnf cnf;
  cnf.num_vars = n;
  cnf.clauses = {{1}, {-1}};
  std::vector<int> wide;
  for (std::uint32_t v = 2; v <= n; ++v) wide.push_back(static_cast<int>(v));
  cnf.clauses.push_back(wide);
  return cnf;
}

/// Refutation of contradiction_cnf(n) that multiplies x1 by x2..xn, swaps every
/// product on the spine with comm-mul, then discards it: 0*Phi + ((1 - x1) + x1).
template <class S>
FpcProof<S> spine_refutation(const AxiomSystem<S>& sys, std::uint32_t n) {
  ProofBuilder<S> b(sys);
  std::size_t l = b.input(2);
  for (std::uint32_t r = 2; r <= n; ++r) l = b.product(r, l);
  // The product x_n (x_{n-1} (... x1)) has its spine along the right children.
  std::string path;
  for (std::uint32_t r = n; r >= 2; --r) {
    l = b.rewrite(Rule::comm_mul, path, l);
    path += "L";
  }
  std::size_t a = b.input(1);
  std::size_t c = b.input(2);
  std::size_t theta = b.addition(a, c);
  b.addition(zero<S>(sys.field), l, one<S>(sys.field), theta);
  return b.proof();
}

}  // namespace ncips::testing
