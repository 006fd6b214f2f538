#include "ncips/serialize.hpp"

#include <charconv>

namespace ncips {

void expect_format(const Json& doc, const char* expected) {
  if (!doc.is_object() || !doc.contains("format")) throw ParseError(std::string("missing \"format\", expected ") + expected, 1, 1);
  const auto got = doc.at("format").get<std::string>();
  if (got != expected) throw ParseError("format is " + got + ", expected " + expected, 1, 1);
}

Field field_of(const Json& doc, const Field& fallback) {
  if (!doc.contains("field")) return fallback;
  return Field::parse(doc.at("field").get<std::string>());
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1, e.byte);
  }
}

AxiomTag parse_axiom_tag(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("axiom role '" + text + "' lacks ':'", 1, 1);
  const std::string role = text.substr(0, colon);
  auto number = [&](std::string_view s) {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v == 0) throw ParseError("bad index in axiom role '" + text + "'", 1, colon + 2);
    return v;
  };
  std::string_view rest(text);
  rest.remove_prefix(colon + 1);
  if (role == "input") return {AxiomRole::input, number(rest), 0};
  if (role == "boolean") return {AxiomRole::boolean, number(rest), 0};
  if (role == "commutator") {
    auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw ParseError("commutator role needs 'i,j'", 1, colon + 2);
    AxiomTag t{AxiomRole::commutator, number(rest.substr(0, comma)), number(rest.substr(comma + 1))};
    if (t.i >= t.j) throw ParseError("commutator role needs i < j", 1, colon + 2);
    return t;
  }
  throw ParseError("unknown axiom role '" + role + "'", 1, 1);
}

}  // namespace ncips
