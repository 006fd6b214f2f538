#pragma once

// Algebraic branching programs and the formula -> ABP conversion.
//
// Conversion runs in three phases:
//  1. a non-leveled ABP whose edges carry one variable or one constant, built
//     by recursion on the formula, with every node tied to an induced part;
//  2. splitting every node v into copies (v, i), i the degree of the part of
//     A(v, sink) that the copy computes;
//  3. removing constant edges by contracting constant paths into the variable
//     edge that follows them.
// The result has one leveled ABP per degree 0..d of the input formula.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncips/errors.hpp"
#include "ncips/formula.hpp"
#include "ncips/matrix.hpp"
#include "ncips/poly.hpp"
#include "ncips/transform.hpp"

namespace ncips {

using NodeId = std::size_t;

/// An induced part together with the degree of the homogeneous component it stands for.
template <class S>
struct VPart {
  InducedPart<S> part;
  std::uint64_t degree = 0;
  friend bool operator==(const VPart&, const VPart&) = default;
  friend auto operator<=>(const VPart& a, const VPart& b) {
    if (auto c = a.part <=> b.part; c != 0) return c;
    return a.degree <=> b.degree;
  }
};

template <class S>
struct AbpEdge {
  NodeId from = 0, to = 0;
  LinForm<S> label;
};

/// Leveled ABP. levels[0] = {source}, levels.back() = {sink}; for degree 0 the
/// source is the sink. The computed polynomial is the path sum times sink_weight.
template <class S>
struct Abp {
  Field field = Field::rationals();
  std::vector<std::vector<NodeId>> levels;
  std::vector<AbpEdge<S>> edges;
  S sink_weight{};
  /// Node of the phase-1 ABP each node was split from (the sink reports the phase-1 sink).
  std::vector<std::size_t> origin;

  std::size_t num_nodes() const { return origin.size(); }
  std::size_t degree() const { return levels.size() - 1; }
  NodeId source() const { return levels.front().front(); }
  NodeId sink() const { return levels.back().front(); }
  /// Nodes whose polynomial to the sink has degree i.
  const std::vector<NodeId>& degree_nodes(std::size_t i) const { return levels[degree() - i]; }
  std::size_t level_of(NodeId v) const {
    for (std::size_t j = 0; j < levels.size(); ++j) {
      if (std::find(levels[j].begin(), levels[j].end(), v) != levels[j].end()) return j;
    }
    throw PreconditionError("unknown ABP node " + std::to_string(v));
  }
};

template <class S>
using VPartMap = std::vector<VPart<S>>;

/// Phase-1 ABP: edges carry a single variable or a single constant.
template <class S>
struct RawAbp {
  struct Edge {
    NodeId from, to;
    bool is_var;
    Var var;
    S value;
  };
  std::vector<InducedPart<S>> parts;
  std::vector<Edge> edges;
  static constexpr NodeId source = 0;
  static constexpr NodeId sink = 1;
};

struct AbpConversionStats {
  std::size_t raw_nodes = 0, raw_edges = 0, raw_constant_edges = 0, erased_zero_edges = 0;
  std::size_t split_nodes = 0;
  std::size_t final_nodes = 0, final_edges = 0, merged_parallel = 0, zero_labels_deleted = 0;
};

template <class S>
struct AbpConversion {
  RawAbp<S> raw;
  /// components[i] computes the degree-i part of the formula.
  std::vector<Abp<S>> components;
  std::vector<VPartMap<S>> vparts;
  AbpConversionStats stats;
};

namespace detail {

template <class S>
RawAbp<S> build_raw_abp(const NcFormula<S>& f, AbpConversionStats& stats) {
  RawAbp<S> raw;
  raw.parts.push_back(InducedPart<S>{0, {}});
  raw.parts.push_back(InducedPart<S>{0, {{0, one<S>(f.field())}}});
  std::function<void(NodeId, NodeId, const NcFormula<S>&, GateId)> go = [&](NodeId v1, NodeId v2, const NcFormula<S>& g,
                                                                            GateId id) {
    if (g.is_variable()) {
      raw.edges.push_back({v1, v2, true, g.var(), zero<S>(f.field())});
      return;
    }
    if (g.is_constant()) {
      if (g.value().is_zero()) {
        ++stats.erased_zero_edges;
        return;
      }
      raw.edges.push_back({v1, v2, false, 0, g.value()});
      return;
    }
    const GateId left = id + 1, right = id + 1 + g.left().size();
    if (g.is_plus()) {
      // The copy wired to the left child zeroes its sibling, and vice versa.
      NodeId a = raw.parts.size();
      InducedPart<S> pa = raw.parts[v1];
      pa.substitutions[right] = zero<S>(f.field());
      raw.parts.push_back(std::move(pa));
      NodeId b = raw.parts.size();
      InducedPart<S> pb = raw.parts[v1];
      pb.substitutions[left] = zero<S>(f.field());
      raw.parts.push_back(std::move(pb));
      raw.edges.push_back({v1, a, false, 0, one<S>(f.field())});
      raw.edges.push_back({v1, b, false, 0, one<S>(f.field())});
      go(a, v2, g.left(), left);
      go(b, v2, g.right(), right);
    } else {
      NodeId m = raw.parts.size();
      InducedPart<S> pm = raw.parts[v1];
      pm.substitutions[left] = one<S>(f.field());
      raw.parts.push_back(std::move(pm));
      go(v1, m, g.left(), left);
      go(m, v2, g.right(), right);
    }
  };
  go(RawAbp<S>::source, RawAbp<S>::sink, f, 0);
  stats.raw_nodes = raw.parts.size();
  stats.raw_edges = raw.edges.size();
  for (const auto& e : raw.edges) stats.raw_constant_edges += e.is_var ? 0 : 1;
  return raw;
}

}  // namespace detail

/// Polynomial from `from` to `to` in a phase-1 ABP (test and debugging aid).
template <class S>
SparseNcPoly<S> raw_abp_expand(const RawAbp<S>& raw, const Field& field, NodeId from, NodeId to) {
  std::map<NodeId, SparseNcPoly<S>> memo;
  std::function<SparseNcPoly<S>(NodeId)> go = [&](NodeId v) -> SparseNcPoly<S> {
    if (v == to) return SparseNcPoly<S>::constant(field, one<S>(field));
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    SparseNcPoly<S> p(field);
    for (const auto& e : raw.edges) {
      if (e.from != v) continue;
      auto rest = go(e.to);
      p += e.is_var ? SparseNcPoly<S>::variable(field, e.var) * rest : scale(rest, e.value);
    }
    memo.emplace(v, p);
    return p;
  };
  return go(from);
}

template <class S>
AbpConversion<S> formula_to_abp(const NcFormula<S>& f) {
  const Field field = f.field();
  AbpConversion<S> conv;
  auto& stats = conv.stats;
  conv.raw = detail::build_raw_abp(f, stats);
  const RawAbp<S>& raw = conv.raw;
  const std::size_t n = raw.parts.size();
  const std::uint64_t top = f.degree();

  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t e = 0; e < raw.edges.size(); ++e) out_edges[raw.edges[e].from].push_back(e);

  // Constant-path closure weights: K[v][w] = sum over constant paths v ~> w of the product of labels.
  std::vector<std::optional<std::map<NodeId, S>>> closure(n);
  std::function<const std::map<NodeId, S>&(NodeId)> K = [&](NodeId v) -> const std::map<NodeId, S>& {
    if (closure[v]) return *closure[v];
    std::map<NodeId, S> k{{v, one<S>(field)}};
    for (std::size_t e : out_edges[v]) {
      const auto& edge = raw.edges[e];
      if (edge.is_var) continue;
      for (const auto& [w, c] : K(edge.to)) {
        S add = edge.value * c;
        auto [it, inserted] = k.try_emplace(w, add);
        if (!inserted) it->second += add;
      }
    }
    for (auto it = k.begin(); it != k.end();) it = it->second.is_zero() ? k.erase(it) : std::next(it);
    closure[v] = std::move(k);
    return *closure[v];
  };
  auto sink_weight_of = [&](NodeId v) {
    const auto& k = K(v);
    auto it = k.find(RawAbp<S>::sink);
    return it == k.end() ? zero<S>(field) : it->second;
  };

  // Phase 2/3: outgoing edges of the copy (a, i) after contraction; empty means the copy is pruned.
  constexpr NodeId kSinkTarget = static_cast<NodeId>(-1);
  std::map<std::pair<NodeId, std::uint64_t>, std::map<NodeId, LinForm<S>>> contracted;
  std::function<const std::map<NodeId, LinForm<S>>&(NodeId, std::uint64_t)> edges_of =
      [&](NodeId a, std::uint64_t i) -> const std::map<NodeId, LinForm<S>>& {
    auto key = std::make_pair(a, i);
    if (auto it = contracted.find(key); it != contracted.end()) return it->second;
    std::map<NodeId, LinForm<S>> out;
    std::size_t contributions = 0;
    for (const auto& [w, kw] : K(a)) {
      for (std::size_t e : out_edges[w]) {
        const auto& edge = raw.edges[e];
        if (!edge.is_var) continue;
        NodeId u = edge.to;
        S coeff = kw;
        NodeId target = u;
        if (i == 1) {
          coeff = coeff * sink_weight_of(u);
          target = kSinkTarget;
        } else if (edges_of(u, i - 1).empty()) {
          continue;
        }
        if (coeff.is_zero()) continue;
        ++contributions;
        out[target].add(edge.var, coeff);
      }
    }
    std::size_t merged = contributions - std::min(contributions, out.size());
    for (auto it = out.begin(); it != out.end();) {
      if (it->second.is_zero()) {
        ++stats.zero_labels_deleted;
        it = out.erase(it);
      } else {
        ++it;
      }
    }
    stats.merged_parallel += merged;
    if (!out.empty()) ++stats.split_nodes;
    return contracted.emplace(key, std::move(out)).first->second;
  };

  for (std::uint64_t d = 0; d <= top; ++d) {
    Abp<S> abp;
    abp.field = field;
    VPartMap<S> vp;
    if (d == 0) {
      abp.levels = {{0}};
      abp.origin = {RawAbp<S>::source};
      abp.sink_weight = sink_weight_of(RawAbp<S>::source);
      vp.push_back({raw.parts[RawAbp<S>::source], 0});
      conv.components.push_back(std::move(abp));
      conv.vparts.push_back(std::move(vp));
      continue;
    }
    abp.sink_weight = one<S>(field);
    // Collect live copies reachable from (source, d), level by level.
    std::vector<std::set<NodeId>> by_degree(d + 1);
    by_degree[d].insert(RawAbp<S>::source);
    for (std::uint64_t i = d; i >= 2; --i) {
      for (NodeId a : by_degree[i]) {
        for (const auto& [u, label] : edges_of(a, i)) by_degree[i - 1].insert(u);
      }
    }
    std::map<std::pair<NodeId, std::uint64_t>, NodeId> ids;
    abp.levels.resize(d + 1);
    for (std::uint64_t i = d; i >= 1; --i) {
      for (NodeId a : by_degree[i]) {
        ids[{a, i}] = abp.origin.size();
        abp.levels[d - i].push_back(abp.origin.size());
        abp.origin.push_back(a);
        vp.push_back({raw.parts[a], i});
      }
    }
    const NodeId sink = abp.origin.size();
    abp.levels[d].push_back(sink);
    abp.origin.push_back(RawAbp<S>::sink);
    vp.push_back({raw.parts[RawAbp<S>::sink], 0});
    for (std::uint64_t i = d; i >= 1; --i) {
      for (NodeId a : by_degree[i]) {
        for (const auto& [u, label] : edges_of(a, i)) {
          NodeId to = u == kSinkTarget ? sink : ids.at({u, i - 1});
          abp.edges.push_back({ids.at({a, i}), to, label});
        }
      }
    }
    stats.final_nodes += abp.num_nodes();
    stats.final_edges += abp.edges.size();
    conv.components.push_back(std::move(abp));
    conv.vparts.push_back(std::move(vp));
  }
  return conv;
}

/// Sum over paths from `from` to `to` of the ordered product of edge labels.
template <class S>
SparseNcPoly<S> abp_expand(const Abp<S>& a, NodeId from, NodeId to) {
  if (from >= a.num_nodes() || to >= a.num_nodes()) throw PreconditionError("unknown ABP node");
  const std::size_t lf = a.level_of(from), lt = a.level_of(to);
  if (from == to) return SparseNcPoly<S>::constant(a.field, one<S>(a.field));
  if (lf >= lt) throw PreconditionError("abp_expand needs `from` on a lower level than `to`");
  std::map<NodeId, SparseNcPoly<S>> acc;
  acc.emplace(from, SparseNcPoly<S>::constant(a.field, one<S>(a.field)));
  for (std::size_t j = lf; j < lt; ++j) {
    for (NodeId v : a.levels[j]) {
      auto it = acc.find(v);
      if (it == acc.end()) continue;
      for (const auto& e : a.edges) {
        if (e.from != v) continue;
        auto term = it->second * e.label.to_poly(a.field);
        auto [jt, inserted] = acc.try_emplace(e.to, term);
        if (!inserted) jt->second += term;
      }
    }
  }
  auto it = acc.find(to);
  return it == acc.end() ? SparseNcPoly<S>(a.field) : it->second;
}

/// abp_expand(source, sink) * sink_weight.
template <class S>
SparseNcPoly<S> abp_polynomial(const Abp<S>& a) {
  return scale(abp_expand(a, a.source(), a.sink()), a.sink_weight);
}

/// Adjacency between degree-i and degree-(i-1) nodes, split by variable:
/// M[i][k](p, q) is the coefficient of x_k on the edge from the p-th degree-i
/// node to the q-th degree-(i-1) node, so that A_i = sum_k x_k M^(k) A_{i-1}.
template <class S>
struct LevelMatrices {
  std::vector<Var> vars;
  /// by_degree[i] for i = 1..d (entry 0 unused).
  std::vector<std::map<Var, FieldMatrix<S>>> by_degree;
};

template <class S>
LevelMatrices<S> level_matrices(const Abp<S>& a) {
  LevelMatrices<S> out;
  std::set<Var> vars;
  for (const auto& e : a.edges)
    for (const auto& [v, c] : e.label.coeffs()) vars.insert(v);
  out.vars.assign(vars.begin(), vars.end());
  const std::size_t d = a.degree();
  out.by_degree.resize(d + 1);
  std::vector<std::pair<std::size_t, std::size_t>> pos(a.num_nodes());  // (degree, index)
  for (std::size_t i = 0; i <= d; ++i) {
    const auto& nodes = a.degree_nodes(i);
    for (std::size_t p = 0; p < nodes.size(); ++p) pos[nodes[p]] = {i, p};
  }
  const S z = zero<S>(a.field);
  for (std::size_t i = 1; i <= d; ++i) {
    const auto rows = static_cast<Eigen::Index>(a.degree_nodes(i).size());
    const auto cols = static_cast<Eigen::Index>(a.degree_nodes(i - 1).size());
    for (Var v : out.vars) out.by_degree[i].emplace(v, FieldMatrix<S>::Constant(rows, cols, z));
  }
  for (const auto& e : a.edges) {
    auto [i, p] = pos[e.from];
    auto [i2, q] = pos[e.to];
    if (i2 + 1 != i) throw PreconditionError("ABP edge does not join consecutive levels");
    for (const auto& [v, c] : e.label.coeffs()) {
      auto& m = out.by_degree[i].at(v);
      m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) += c;
    }
  }
  return out;
}

/// The component of a homogeneous formula, with its v-part map.
template <class S>
std::pair<Abp<S>, VPartMap<S>> homogeneous_abp(const NcFormula<S>& f) {
  auto hd = syntactic_homogeneity(f);
  if (!hd) throw PreconditionError("formula is not syntactically homogeneous");
  const std::uint64_t d = hd->annihilated ? f.degree() : hd->degree;
  auto conv = formula_to_abp(f);
  return {conv.components[d], conv.vparts[d]};
}

}  // namespace ncips
