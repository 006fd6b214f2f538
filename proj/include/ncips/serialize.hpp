#pragma once

// JSON and DOT encodings of proofs, certificates, witnesses and ABPs.
// Every JSON document carries a "format" field naming its schema and version.

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>

#include "ncips/abp.hpp"
#include "ncips/pit.hpp"
#include "ncips/proofsys.hpp"

namespace ncips {

using Json = nlohmann::ordered_json;

inline constexpr const char* kProofFormat = "ncips-fpc/1";
inline constexpr const char* kCertificateFormat = "ncips-cert/1";
inline constexpr const char* kWitnessFormat = "ncips-witness/1";
inline constexpr const char* kAbpFormat = "ncips-abp/1";

/// Throws ParseError when doc["format"] is missing or differs from `expected`.
void expect_format(const Json& doc, const char* expected);
/// Reads doc["field"], falling back to `fallback` when absent.
Field field_of(const Json& doc, const Field& fallback);
Json parse_json(const std::string& text);
AxiomTag parse_axiom_tag(const std::string& text);

template <class S>
Json linform_to_json(const LinForm<S>& l) {
  Json out = Json::object();
  for (const auto& [v, c] : l.coeffs()) out[var_name(v)] = to_string(c);
  return out;
}

template <class S>
LinForm<S> linform_from_json(const Field& field, const Json& j) {
  LinForm<S> l;
  for (const auto& [name, c] : j.items()) {
    auto f = parse_formula<S>(field, name);
    if (!f.is_variable()) throw ParseError("linear-form key '" + name + "' is not a variable", 1, 1);
    l.add(f.var(), parse_scalar<S>(field, c.template get<std::string>()));
  }
  return l;
}

template <class S>
Json vpart_to_json(const VPart<S>& p) {
  Json subs = Json::array();
  for (const auto& [g, c] : p.part.substitutions) subs.push_back(Json::array({g, to_string(c)}));
  return Json{{"root", p.part.root}, {"subs", subs}, {"degree", p.degree}};
}

template <class S>
VPart<S> vpart_from_json(const Field& field, const Json& j) {
  VPart<S> p;
  p.part.root = j.at("root").get<GateId>();
  for (const auto& s : j.at("subs")) p.part.substitutions[s.at(0).get<GateId>()] = parse_scalar<S>(field, s.at(1).get<std::string>());
  p.degree = j.at("degree").get<std::uint64_t>();
  return p;
}

// ---------------------------------------------------------------------------
// ABPs.

template <class S>
Json abp_to_json(const Abp<S>& a, const VPartMap<S>* vparts = nullptr) {
  Json levels = Json::array();
  for (const auto& l : a.levels) levels.push_back(l);
  Json edges = Json::array();
  for (const auto& e : a.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"label", linform_to_json(e.label)}});
  Json out{{"format", kAbpFormat},
           {"field", a.field.name()},
           {"degree", a.degree()},
           {"levels", levels},
           {"sink_weight", to_string(a.sink_weight)},
           {"edges", edges}};
  if (vparts) {
    Json vp = Json::array();
    for (const auto& p : *vparts) vp.push_back(vpart_to_json(p));
    out["vparts"] = vp;
  }
  return out;
}

template <class S>
std::string abp_to_dot(const Abp<S>& a) {
  std::ostringstream out;
  out << "digraph abp {\n  rankdir=LR;\n";
  for (std::size_t j = 0; j < a.levels.size(); ++j) {
    out << "  { rank=same;";
    for (NodeId v : a.levels[j]) out << " n" << v << ";";
    out << " }\n";
  }
  for (NodeId v = 0; v < a.num_nodes(); ++v) {
    std::string label = v == a.source() ? "source" : (v == a.sink() ? "sink" : std::to_string(v));
    out << "  n" << v << " [label=\"" << label << "\"];\n";
  }
  for (const auto& e : a.edges) out << "  n" << e.from << " -> n" << e.to << " [label=\"" << to_string(e.label) << "\"];\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Witnesses.

template <class S>
Json witness_to_json(const NcFormula<S>& f, const Witness<S>& w) {
  Json lambdas = Json::array();
  for (const auto& l : w.lambdas) {
    Json m{{"rows", l.rows()}, {"cols", l.cols()}, {"entries", Json::array()}};
    for (Eigen::Index r = 0; r < l.rows(); ++r)
      for (Eigen::Index c = 0; c < l.cols(); ++c) m["entries"].push_back(to_string(l(r, c)));
    lambdas.push_back(m);
  }
  Json transfers = Json::array();
  for (const auto& t : w.transfers) {
    Json m{{"rows", t.rows}, {"cols", t.cols}, {"entries", Json::array()}};
    for (const auto& e : t.entries) m["entries"].push_back(linform_to_json(e));
    transfers.push_back(m);
  }
  Json vparts = Json::array();
  for (const auto& level : w.vparts) {
    Json l = Json::array();
    for (const auto& p : level) l.push_back(vpart_to_json(p));
    vparts.push_back(l);
  }
  return Json{{"format", kWitnessFormat}, {"field", w.field.name()}, {"formula", print_formula(f)}, {"dims", w.dims},
              {"lambdas", lambdas},       {"transfers", transfers},   {"vparts", vparts}};
}

template <class S>
Witness<S> witness_from_json(const Json& doc) {
  expect_format(doc, kWitnessFormat);
  Witness<S> w;
  w.field = Field::parse(doc.at("field").get<std::string>());
  w.dims = doc.at("dims").get<std::vector<std::size_t>>();
  for (const auto& m : doc.at("lambdas")) {
    auto rows = m.at("rows").get<Eigen::Index>(), cols = m.at("cols").get<Eigen::Index>();
    const auto& e = m.at("entries");
    if (e.size() != static_cast<std::size_t>(rows * cols)) throw DimensionMismatch("Lambda entry count differs from rows*cols");
    FieldMatrix<S> l = FieldMatrix<S>::Constant(rows, cols, zero<S>(w.field));
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c)
        l(r, c) = parse_scalar<S>(w.field, e.at(static_cast<std::size_t>(r * cols + c)).template get<std::string>());
    w.lambdas.push_back(std::move(l));
  }
  for (const auto& m : doc.at("transfers")) {
    LinFormMatrix<S> t(m.at("rows").get<std::size_t>(), m.at("cols").get<std::size_t>());
    const auto& e = m.at("entries");
    if (e.size() != t.entries.size()) throw DimensionMismatch("T entry count differs from rows*cols");
    for (std::size_t k = 0; k < e.size(); ++k) t.entries[k] = linform_from_json<S>(w.field, e[k]);
    w.transfers.push_back(std::move(t));
  }
  for (const auto& level : doc.at("vparts")) {
    std::vector<VPart<S>> l;
    for (const auto& p : level) l.push_back(vpart_from_json<S>(w.field, p));
    w.vparts.push_back(std::move(l));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Axiom systems, proofs and certificates.

template <class S>
Json system_to_json(const AxiomSystem<S>& sys) {
  Json axioms = Json::array();
  for (std::size_t k = 0; k < sys.axioms.size(); ++k)
    axioms.push_back({{"y", k + 1}, {"role", to_string(sys.tags[k])}, {"formula", print_formula(sys.axioms[k])}});
  return Json{{"num_vars", sys.num_vars}, {"axioms", axioms}};
}

/// Accepts {"dimacs": text}, {"num_vars", "inputs": [formula...]} or the explicit
/// {"num_vars", "axioms": [{role, formula}...]} written by system_to_json.
template <class S>
AxiomSystem<S> system_from_json(const Field& field, const Json& j) {
  if (j.contains("dimacs")) return build_axiom_system<S>(parse_dimacs(j.at("dimacs").get<std::string>()), field);
  const auto num_vars = j.at("num_vars").get<std::uint32_t>();
  if (j.contains("inputs")) {
    std::vector<NcFormula<S>> inputs;
    for (const auto& t : j.at("inputs")) inputs.push_back(parse_formula<S>(field, t.get<std::string>()));
    return build_axiom_system<S>(field, num_vars, inputs);
  }
  AxiomSystem<S> sys;
  sys.field = field;
  sys.num_vars = num_vars;
  for (const auto& a : j.at("axioms")) {
    auto tag = parse_axiom_tag(a.at("role").get<std::string>());
    if (a.contains("y") && a.at("y").get<std::size_t>() != sys.axioms.size() + 1)
      throw ParseError("axiom bindings must list y1, y2, ... in order", 1, 1);
    auto f = parse_formula<S>(field, a.at("formula").get<std::string>());
    if (tag.role == AxiomRole::boolean && !(f == boolean_axiom<S>(field, tag.i)))
      throw PreconditionError("axiom tagged " + to_string(tag) + " is not the Boolean axiom");
    if (tag.role == AxiomRole::commutator && !(f == commutator_axiom<S>(field, tag.i, tag.j)))
      throw PreconditionError("axiom tagged " + to_string(tag) + " is not the commutator axiom");
    sys.axioms.push_back(std::move(f));
    sys.tags.push_back(tag);
  }
  return sys;
}

template <class S>
Json proof_to_json(const FpcProof<S>& proof, const Json& system) {
  Json lines = Json::array();
  for (const auto& [f, j] : proof.lines) {
    Json just;
    switch (j.kind) {
      case JustKind::input:
        just = {{"rule", "input"}, {"index", j.index}};
        break;
      case JustKind::boolean:
        just = {{"rule", "boolean"}, {"var", j.index}};
        break;
      case JustKind::product:
        just = {{"rule", "product"}, {"var", j.index}, {"premise", j.premise}};
        break;
      case JustKind::addition:
        just = {{"rule", "addition"}, {"a", to_string(j.a)}, {"b", to_string(j.b)}, {"premises", {j.premise, j.premise2}}};
        break;
      case JustKind::rewrite:
        just = {{"rule", "rewrite"},
                {"name", rule_name(j.rule)},
                {"direction", j.direction == Direction::forward ? "forward" : "backward"},
                {"path", j.path},
                {"premise", j.premise}};
        break;
    }
    lines.push_back({{"formula", print_formula(f)}, {"just", just}});
  }
  return Json{{"format", kProofFormat}, {"field", proof.field.name()}, {"tree_like", proof.tree_like}, {"system", system},
              {"lines", lines}};
}

template <class S>
FpcProof<S> proof_from_json(const Json& doc, const Field& field) {
  expect_format(doc, kProofFormat);
  FpcProof<S> proof;
  proof.field = field;
  proof.tree_like = doc.value("tree_like", true);
  for (const auto& l : doc.at("lines")) {
    FpcLine<S> line{parse_formula<S>(field, l.at("formula").get<std::string>()), {}};
    const auto& j = l.at("just");
    const auto rule = j.at("rule").get<std::string>();
    auto& just = line.just;
    if (rule == "input") {
      just.kind = JustKind::input;
      just.index = j.at("index").get<std::uint32_t>();
    } else if (rule == "boolean") {
      just.kind = JustKind::boolean;
      just.index = j.at("var").get<std::uint32_t>();
    } else if (rule == "product") {
      just.kind = JustKind::product;
      just.index = j.at("var").get<std::uint32_t>();
      just.premise = j.at("premise").get<std::size_t>();
    } else if (rule == "addition") {
      just.kind = JustKind::addition;
      just.a = parse_scalar<S>(field, j.value("a", std::string("1")));
      just.b = parse_scalar<S>(field, j.value("b", std::string("1")));
      const auto& p = j.at("premises");
      if (p.size() != 2) throw ParseError("addition needs exactly two premises", proof.lines.size() + 1, 1);
      just.premise = p.at(0).get<std::size_t>();
      just.premise2 = p.at(1).get<std::size_t>();
    } else if (rule == "rewrite") {
      just.kind = JustKind::rewrite;
      auto r = parse_rule(j.at("name").get<std::string>());
      if (!r) throw ParseError("unknown rewrite rule '" + j.at("name").get<std::string>() + "'", proof.lines.size() + 1, 1);
      just.rule = *r;
      const auto dir = j.value("direction", std::string("forward"));
      if (dir != "forward" && dir != "backward") throw ParseError("direction must be forward or backward", proof.lines.size() + 1, 1);
      just.direction = dir == "forward" ? Direction::forward : Direction::backward;
      just.path = j.value("path", std::string());
      just.premise = j.at("premise").get<std::size_t>();
    } else {
      throw ParseError("unknown justification '" + rule + "'", proof.lines.size() + 1, 1);
    }
    proof.lines.push_back(std::move(line));
  }
  return proof;
}

template <class S>
Json certificate_to_json(const IpsCertificate<S>& cert) {
  Json bindings = Json::array();
  for (std::size_t k = 0; k < cert.system.tags.size(); ++k)
    bindings.push_back({{"y", k + 1}, {"axiom", to_string(cert.system.tags[k])}});
  return Json{{"format", kCertificateFormat},
              {"field", cert.formula.field().name()},
              {"formula", print_formula(cert.formula)},
              {"size", cert.formula.size()},
              {"bindings", bindings},
              {"system", system_to_json(cert.system)}};
}

template <class S>
IpsCertificate<S> certificate_from_json(const Json& doc, const Field& field) {
  expect_format(doc, kCertificateFormat);
  IpsCertificate<S> cert{parse_formula<S>(field, doc.at("formula").get<std::string>()),
                         system_from_json<S>(field, doc.at("system"))};
  if (doc.contains("bindings")) {
    for (const auto& b : doc.at("bindings")) {
      auto k = b.at("y").get<std::size_t>();
      if (k == 0 || k > cert.system.tags.size() || to_string(cert.system.tags[k - 1]) != b.at("axiom").get<std::string>())
        throw ParseError("binding of y" + std::to_string(k) + " disagrees with the axiom system", 1, 1);
    }
  }
  for (Var v : variables(cert.formula))
    if (is_y_var(v)) cert.system.axiom_of(v);
  return cert;
}

}  // namespace ncips
