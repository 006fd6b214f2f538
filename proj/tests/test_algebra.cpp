#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ncips/field.hpp"
#include "ncips/matrix.hpp"
#include "ncips/poly.hpp"
#include "support.hpp"

using namespace ncips;
using ncips::testing::random_poly;
using ncips::testing::random_scalar;

namespace {

template <class S>
void check_field_axioms(const Field& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const S z = zero<S>(field), o = one<S>(field);
  for (int i = 0; i < 10000; ++i) {
    S a = random_scalar<S>(field, rng), b = random_scalar<S>(field, rng), c = random_scalar<S>(field, rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + z, a);
    ASSERT_EQ(a * o, a);
    ASSERT_TRUE((a + (-a)).is_zero());
    ASSERT_EQ(a - b, a + (-b));
    if (!a.is_zero()) {
      ASSERT_TRUE((a * a.inverse()).is_one());
    }
  }
}

}  // namespace

TEST(Field, Gf2OnePlusOne) { EXPECT_TRUE((Gf2(1) + Gf2(1)).is_zero()); }

TEST(Field, RationalSum) {
  Field q = Field::rationals();
  EXPECT_EQ(parse_scalar<Rational>(q, "1/3") + parse_scalar<Rational>(q, "1/6"), parse_scalar<Rational>(q, "1/2"));
}

TEST(Field, Z5InverseOfTwo) {
  Field f = Field::prime(5);
  EXPECT_EQ(from_integer<Zp>(f, 2).inverse(), from_integer<Zp>(f, 3));
}

TEST(Field, DivisionByZeroThrows) {
  EXPECT_THROW(Gf2(0).inverse(), DivisionByZero);
  EXPECT_THROW(zero<Zp>(Field::prime(7)).inverse(), DivisionByZero);
  EXPECT_THROW(Rational(0).inverse(), DivisionByZero);
}

TEST(Field, MismatchedModuliThrow) {
  EXPECT_THROW(Zp(1, 5) + Zp(1, 7), FieldMismatch);
  EXPECT_THROW(from_integer<Zp>(Field::gf2(), 1), FieldMismatch);
}

TEST(Field, CanonicalRepresentatives) {
  Field q = Field::rationals();
  EXPECT_EQ(to_string(parse_scalar<Rational>(q, "-6/4")), "-3/2");
  EXPECT_EQ(to_string(parse_scalar<Zp>(Field::prime(5), "-1")), "4");
  EXPECT_EQ(to_string(parse_scalar<Gf2>(Field::gf2(), "-1")), "1");
  EXPECT_THROW(parse_scalar<Zp>(Field::prime(5), "1/2"), Error);
  EXPECT_THROW(parse_scalar<Rational>(q, "1/0"), DivisionByZero);
}

TEST(Field, ParseFieldNames) {
  EXPECT_EQ(Field::parse("gf2"), Field::gf2());
  EXPECT_EQ(Field::parse("q"), Field::rationals());
  EXPECT_EQ(Field::parse("zp:2147483647").modulus, 2147483647u);
  EXPECT_THROW(Field::parse("zp:6"), PreconditionError);
  EXPECT_THROW(Field::parse("zp:2147483648"), PreconditionError);
  EXPECT_THROW(Field::parse("r"), PreconditionError);
}

TEST(Field, AxiomsGf2) { check_field_axioms<Gf2>(Field::gf2(), 1); }
TEST(Field, AxiomsZ5) { check_field_axioms<Zp>(Field::prime(5), 2); }
TEST(Field, AxiomsLargePrime) { check_field_axioms<Zp>(Field::prime(2147483647), 3); }
TEST(Field, AxiomsRationals) { check_field_axioms<Rational>(Field::rationals(), 4); }

TEST(Poly, ProductIsOrdered) {
  Field q = Field::rationals();
  auto x1 = SparseNcPoly<Rational>::variable(q, 1), x2 = SparseNcPoly<Rational>::variable(q, 2);
  EXPECT_EQ(to_string(x1 * x2), "x1x2");
  EXPECT_EQ(to_string(x2 * x1), "x2x1");
  EXPECT_NE(x1 * x2, x2 * x1);
}

TEST(Poly, CommutatorsCancel) {
  Field q = Field::rationals();
  auto x1 = SparseNcPoly<Rational>::variable(q, 1), x2 = SparseNcPoly<Rational>::variable(q, 2);
  auto c = x1 * x2 - x2 * x1;
  auto d = x2 * x1 - x1 * x2;
  EXPECT_TRUE((c + d).is_zero());
  EXPECT_TRUE((c + d).terms().empty());
}

TEST(Poly, SquareOfSum) {
  Field q = Field::rationals();
  auto s = SparseNcPoly<Rational>::variable(q, 1) + SparseNcPoly<Rational>::variable(q, 2);
  auto p = s * s;
  ASSERT_EQ(p.size(), 4u);
  for (Word w : {Word{1, 1}, Word{1, 2}, Word{2, 1}, Word{2, 2}}) EXPECT_TRUE(p.coefficient(w).is_one());
}

TEST(Poly, DegreePartExamples) {
  Field q = Field::rationals();
  auto x1 = SparseNcPoly<Rational>::variable(q, 1);
  auto p = x1 + x1 * SparseNcPoly<Rational>::variable(q, 2);
  EXPECT_EQ(degree_part(p, 1), x1);
  EXPECT_TRUE(degree_part(p, 0).is_zero());
}

TEST(Poly, DegreePartsSumToWhole) {
  std::mt19937_64 rng(11);
  Field f = Field::prime(5);
  for (int i = 0; i < 500; ++i) {
    auto p = random_poly<Zp>(f, rng, 12, 5, 3);
    SparseNcPoly<Zp> sum(f);
    for (std::size_t d = 0; d <= 5; ++d) sum += degree_part(p, d);
    ASSERT_EQ(sum, p);
  }
}

TEST(Poly, ProductWordsAreConcatenations) {
  std::mt19937_64 rng(12);
  Field f = Field::rationals();
  for (int i = 0; i < 300; ++i) {
    auto p = random_poly<Rational>(f, rng, 6, 3, 3);
    auto q = random_poly<Rational>(f, rng, 6, 3, 3);
    std::set<Word> concat;
    for (const auto& [u, a] : p.terms()) {
      for (const auto& [w, b] : q.terms()) {
        Word uw = u;
        uw.insert(uw.end(), w.begin(), w.end());
        concat.insert(uw);
      }
    }
    auto pq = p * q;
    for (const auto& [w, c] : pq.terms()) ASSERT_TRUE(concat.count(w)) << word_to_string(w);
  }
}

TEST(Poly, NoZeroCoefficientsStored) {
  std::mt19937_64 rng(13);
  Field f = Field::gf2();
  for (int i = 0; i < 300; ++i) {
    auto p = random_poly<Gf2>(f, rng, 10, 3, 2) * random_poly<Gf2>(f, rng, 10, 3, 2);
    for (const auto& [w, c] : p.terms()) ASSERT_FALSE(c.is_zero());
  }
}

TEST(Poly, TermCapIsLoud) {
  Field f = Field::rationals();
  ScopedTermCap cap(10);
  auto s = SparseNcPoly<Rational>::variable(f, 1) + SparseNcPoly<Rational>::variable(f, 2);
  auto p = s * s * s;  // 8 terms
  EXPECT_EQ(p.size(), 8u);
  EXPECT_THROW(p * s, TermBudgetExceeded);
}

TEST(LinForm, DropsCancelledCoefficients) {
  Field f = Field::gf2();
  auto l = LinForm<Gf2>::variable(f, 1) + LinForm<Gf2>::variable(f, 2) + LinForm<Gf2>::variable(f, 1);
  EXPECT_EQ(l.coeffs().size(), 1u);
  EXPECT_EQ(to_string(l), "x2");
}

namespace {

FieldMatrix<Gf2> gf2_matrix(std::initializer_list<std::initializer_list<int>> rows) {
  FieldMatrix<Gf2> m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto r : rows) {
    Eigen::Index j = 0;
    for (int v : r) m(i, j++) = Gf2(v);
    ++i;
  }
  return m;
}

std::set<unsigned> gf2_span(const FieldMatrix<Gf2>& m) {
  std::set<unsigned> out;
  const auto k = m.rows();
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    unsigned v = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (!((mask >> i) & 1u)) continue;
      for (Eigen::Index j = 0; j < m.cols(); ++j) v ^= m(i, j).value() << j;
    }
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST(Matrix, IdentityBasis) {
  auto id = gf2_matrix({{1, 0}, {0, 1}});
  EXPECT_EQ(row_space_basis(id), id);
}

TEST(Matrix, DependentRowsReduced) {
  auto m = gf2_matrix({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  EXPECT_EQ(row_space_basis(m), gf2_matrix({{1, 0, 1}, {0, 1, 1}}));
}

TEST(Matrix, ZeroMatrixHasEmptyBasis) {
  FieldMatrix<Gf2> z = FieldMatrix<Gf2>::Constant(3, 3, Gf2(0));
  auto b = row_space_basis(z);
  EXPECT_EQ(b.rows(), 0);
  EXPECT_EQ(b.cols(), 3);
}

TEST(Matrix, ExhaustiveGf2UpTo4x4) {
  for (int rows = 1; rows <= 4; ++rows) {
    for (int cols = 1; cols <= 4; ++cols) {
      for (unsigned bits = 0; bits < (1u << (rows * cols)); ++bits) {
        FieldMatrix<Gf2> m(rows, cols);
        for (int i = 0; i < rows; ++i)
          for (int j = 0; j < cols; ++j) m(i, j) = Gf2((bits >> (i * cols + j)) & 1u);
        auto b = row_space_basis(m);
        auto span_m = gf2_span(m), span_b = gf2_span(b);
        ASSERT_EQ(span_m, span_b);
        // Independent basis: 2^rank distinct combinations.
        ASSERT_EQ(span_b.size(), std::size_t{1} << b.rows());
        ASSERT_EQ(rank(m), b.rows());
        ASSERT_EQ(row_space_basis(b), b);
      }
    }
  }
}

TEST(Matrix, ExpressInBasisExamples) {
  auto basis = gf2_matrix({{1, 0, 1}, {0, 1, 1}});
  RowVector<Gf2> v(3);
  v << Gf2(1), Gf2(0), Gf2(1);
  auto c = express_in_basis<Gf2>(v, basis, Gf2(0), Gf2(1));
  EXPECT_EQ(c(0), Gf2(1));
  EXPECT_EQ(c(1), Gf2(0));
  RowVector<Gf2> z = RowVector<Gf2>::Constant(3, Gf2(0));
  auto cz = express_in_basis<Gf2>(z, basis, Gf2(0), Gf2(1));
  EXPECT_TRUE(cz(0).is_zero() && cz(1).is_zero());
  RowVector<Gf2> out(3);
  out << Gf2(1), Gf2(0), Gf2(0);
  EXPECT_THROW(express_in_basis<Gf2>(out, basis, Gf2(0), Gf2(1)), NotInSpan);
}

TEST(Matrix, ExpressInBasisRoundTripsOverQ) {
  std::mt19937_64 rng(21);
  Field q = Field::rationals();
  const Rational z(0), o(1);
  for (int t = 0; t < 300; ++t) {
    FieldMatrix<Rational> b(3, 5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) b(i, j) = random_scalar<Rational>(q, rng);
    RowVector<Rational> coef(3);
    for (int i = 0; i < 3; ++i) coef(i) = random_scalar<Rational>(q, rng);
    RowVector<Rational> v = RowVector<Rational>::Constant(5, z);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) v(j) += coef(i) * b(i, j);
    auto c = express_in_basis<Rational>(v, b, z, o);
    RowVector<Rational> back = RowVector<Rational>::Constant(5, z);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) back(j) += c(i) * b(i, j);
    ASSERT_EQ(back, v);
  }
}

TEST(Matrix, ExpressInBasisRoundTripsOverZ5WithDependentRows) {
  std::mt19937_64 rng(22);
  Field f = Field::prime(5);
  const Zp z = zero<Zp>(f), o = one<Zp>(f);
  for (int t = 0; t < 300; ++t) {
    FieldMatrix<Zp> b(4, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) b(i, j) = random_scalar<Zp>(f, rng);
    b.row(3) = b.row(0);
    for (int j = 0; j < 4; ++j) b(3, j) = b(0, j) + b(1, j);
    RowVector<Zp> v = RowVector<Zp>::Constant(4, z);
    for (int j = 0; j < 4; ++j) v(j) = b(1, j) + b(2, j) + b(2, j);
    auto c = express_in_basis<Zp>(v, b, z, o);
    for (int j = 0; j < 4; ++j) {
      Zp s = z;
      for (int i = 0; i < 4; ++i) s += c(i) * b(i, j);
      ASSERT_EQ(s, v(j));
    }
  }
}
