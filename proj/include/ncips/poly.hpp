#pragma once

// Words, canonical sparse non-commutative polynomials and linear forms.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncips/errors.hpp"
#include "ncips/field.hpp"

namespace ncips {

/// Variable index. x_i is i (1-based); certificate variables y_j are kYBase + j.
using Var = std::uint32_t;
inline constexpr Var kYBase = Var{1} << 30;

inline bool is_y_var(Var v) { return v > kYBase; }
inline Var x_var(std::uint32_t i) { return i; }
inline Var y_var(std::uint32_t j) { return kYBase + j; }
inline std::uint32_t var_index(Var v) { return is_y_var(v) ? v - kYBase : v; }
inline std::string var_name(Var v) { return (is_y_var(v) ? "y" : "x") + std::to_string(var_index(v)); }

using Word = std::vector<Var>;

std::string word_to_string(const Word& w);

inline constexpr std::size_t kDefaultTermCap = std::size_t{1} << 20;

/// Process-wide term budget for polynomial arithmetic.
std::size_t term_cap();
void set_term_cap(std::size_t cap);

class ScopedTermCap {
 public:
  explicit ScopedTermCap(std::size_t cap) : saved_(term_cap()) { set_term_cap(cap); }
  ~ScopedTermCap() { set_term_cap(saved_); }
  ScopedTermCap(const ScopedTermCap&) = delete;
  ScopedTermCap& operator=(const ScopedTermCap&) = delete;

 private:
  std::size_t saved_;
};

template <class S>
class SparseNcPoly {
 public:
  using Terms = std::map<Word, S>;

  SparseNcPoly() = default;
  explicit SparseNcPoly(Field field) : field_(field) {}

  static SparseNcPoly constant(Field field, const S& c) {
    SparseNcPoly p(field);
    if (!c.is_zero()) p.terms_.emplace(Word{}, c);
    return p;
  }
  static SparseNcPoly variable(Field field, Var v) {
    SparseNcPoly p(field);
    p.terms_.emplace(Word{v}, one<S>(field));
    return p;
  }
  static SparseNcPoly monomial(Field field, Word w, const S& c) {
    SparseNcPoly p(field);
    if (!c.is_zero()) p.terms_.emplace(std::move(w), c);
    return p;
  }

  const Field& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  S coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? zero<S>(field_) : it->second;
  }

  /// Adds c to the coefficient of w, dropping the term if it cancels.
  void add_term(const Word& w, const S& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
    if (terms_.size() > term_cap()) throw TermBudgetExceeded(term_cap());
  }

  /// Largest word length; -1 for the zero polynomial.
  long max_degree() const {
    long d = -1;
    for (const auto& [w, c] : terms_) d = std::max<long>(d, static_cast<long>(w.size()));
    return d;
  }

  SparseNcPoly& operator+=(const SparseNcPoly& o) {
    check_field(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  SparseNcPoly& operator-=(const SparseNcPoly& o) {
    check_field(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }

  friend SparseNcPoly operator+(SparseNcPoly a, const SparseNcPoly& b) { return a += b; }
  friend SparseNcPoly operator-(SparseNcPoly a, const SparseNcPoly& b) { return a -= b; }
  friend SparseNcPoly operator-(const SparseNcPoly& a) { return scale(a, -one<S>(a.field_)); }

  /// Product with words concatenated left then right.
  friend SparseNcPoly operator*(const SparseNcPoly& a, const SparseNcPoly& b) {
    a.check_field(b);
    SparseNcPoly r(a.field_);
    Word w;
    for (const auto& [u, cu] : a.terms_) {
      for (const auto& [v, cv] : b.terms_) {
        w.assign(u.begin(), u.end());
        w.insert(w.end(), v.begin(), v.end());
        r.add_term(w, cu * cv);
      }
    }
    return r;
  }

  friend SparseNcPoly scale(const SparseNcPoly& a, const S& s) {
    SparseNcPoly r(a.field_);
    if (s.is_zero()) return r;
    for (const auto& [w, c] : a.terms_) {
      S v = c * s;
      if (!v.is_zero()) r.terms_.emplace_hint(r.terms_.end(), w, v);
    }
    return r;
  }

  friend bool operator==(const SparseNcPoly& a, const SparseNcPoly& b) { return a.terms_ == b.terms_; }

 private:
  void check_field(const SparseNcPoly& o) const {
    if (!(field_ == o.field_)) throw FieldMismatch("polynomials over " + field_.name() + " and " + o.field_.name());
  }

  Field field_ = Field::rationals();
  Terms terms_;
};

template <class S>
SparseNcPoly<S> degree_part(const SparseNcPoly<S>& p, std::size_t i) {
  SparseNcPoly<S> r(p.field());
  for (const auto& [w, c] : p.terms()) {
    if (w.size() == i) r.add_term(w, c);
  }
  return r;
}

template <class S>
std::string to_string(const SparseNcPoly<S>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    if (w.empty()) {
      out += to_string(c);
    } else if (c.is_one()) {
      out += word_to_string(w);
    } else {
      out += to_string(c) + "*" + word_to_string(w);
    }
  }
  return out;
}

/// Homogeneous linear form sum_k c_k x_k.
template <class S>
class LinForm {
 public:
  using Coeffs = std::map<Var, S>;

  LinForm() = default;
  static LinForm variable(Field field, Var v) {
    LinForm l;
    l.coeffs_.emplace(v, one<S>(field));
    return l;
  }

  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  void add(Var v, const S& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(v, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  LinForm& operator+=(const LinForm& o) {
    for (const auto& [v, c] : o.coeffs_) add(v, c);
    return *this;
  }
  friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
  friend LinForm scale(const LinForm& a, const S& s) {
    LinForm r;
    for (const auto& [v, c] : a.coeffs_) r.add(v, c * s);
    return r;
  }
  friend bool operator==(const LinForm& a, const LinForm& b) { return a.coeffs_ == b.coeffs_; }

  SparseNcPoly<S> to_poly(Field field) const {
    SparseNcPoly<S> p(field);
    for (const auto& [v, c] : coeffs_) p.add_term(Word{v}, c);
    return p;
  }

 private:
  Coeffs coeffs_;
};

template <class S>
std::string to_string(const LinForm<S>& l) {
  if (l.is_zero()) return "0";
  std::string out;
  for (const auto& [v, c] : l.coeffs()) {
    if (!out.empty()) out += " + ";
    out += c.is_one() ? var_name(v) : to_string(c) + "*" + var_name(v);
  }
  return out;
}

}  // namespace ncips
