#include "lscat/matrix.hpp"

#include <gtest/gtest.h>

using namespace lscat;

TEST(Fields, RationalArithmeticIsExact) {
  Rationals q;
  auto third = q.inv(q.from_int(3));
  EXPECT_TRUE(q.equal(q.mul(third, q.from_int(3)), q.one()));
  EXPECT_EQ(q.to_string(q.add(third, third)), "2/3");
  EXPECT_THROW(q.inv(q.zero()), std::domain_error);
}

TEST(Fields, PrimeFieldInverses) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u}) {
    PrimeField f(p);
    for (std::uint32_t a = 1; a < p; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u) << "p=" << p << " a=" << a;
    EXPECT_EQ(f.from_int(-1), p - 1);
  }
  EXPECT_THROW(PrimeField(4), std::invalid_argument);
  EXPECT_THROW(PrimeField(1), std::invalid_argument);
}

TEST(Fields, ParseDescriptors) {
  EXPECT_EQ(CoefficientField::parse("q").characteristic, 0);
  EXPECT_EQ(CoefficientField::parse("f2").characteristic, 2);
  EXPECT_EQ(CoefficientField::parse("F5").name(), "F5");
  EXPECT_THROW(CoefficientField::parse("f4"), std::invalid_argument);
  EXPECT_THROW(CoefficientField::parse("r"), std::invalid_argument);
  EXPECT_THROW(CoefficientField::parse("f2x"), std::invalid_argument);
}

namespace {

template <class F>
Matrix<F> from_rows(const F& f, const std::vector<std::vector<int>>& rows) {
  Matrix<F> m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = f.from_int(rows[i][j]);
  return m;
}

}  // namespace

TEST(Matrix, RankDependsOnCharacteristic) {
  // determinant 2: invertible over Q and F3, singular over F2
  const std::vector<std::vector<int>> rows = {{1, 1}, {1, -1}};
  EXPECT_EQ(rank(from_rows(Rationals{}, rows)), 2u);
  EXPECT_EQ(rank(from_rows(PrimeField(3), rows)), 2u);
  EXPECT_EQ(rank(from_rows(PrimeField(2), rows)), 1u);
}

TEST(Matrix, KernelVectorsAreAnnihilatedAndIndependent) {
  Rationals q;
  auto m = from_rows(q, {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 1, 0}});
  auto ker = kernel_basis(m);
  ASSERT_EQ(ker.size(), 2u);
  for (const auto& v : ker) EXPECT_TRUE(is_zero_vector(q, m.apply(v)));
  IndependentSet<Rationals> s(q, 4);
  for (const auto& v : ker) EXPECT_TRUE(s.try_add(v));
}

TEST(Matrix, ProductAndIdentity) {
  Rationals q;
  auto a = from_rows(q, {{1, 2}, {3, 4}});
  auto i = Matrix<Rationals>::identity(q, 2);
  EXPECT_TRUE(a * i == a);
  EXPECT_TRUE(i * a == a);
  auto sq = a * a;
  EXPECT_EQ(q.to_string(sq(0, 0)), "7");
  EXPECT_EQ(q.to_string(sq(1, 1)), "22");
}

TEST(Matrix, RrefPivots) {
  Rationals q;
  auto e = rref(from_rows(q, {{0, 2, 4}, {0, 1, 2}, {1, 0, 1}}));
  EXPECT_EQ(e.pivot_columns, (std::vector<std::size_t>{0, 1}));
}

TEST(IndependentSet, CoordinatesFollowInsertionOrder) {
  Rationals q;
  IndependentSet<Rationals> s(q, 3);
  EXPECT_TRUE(s.try_add({q.from_int(1), q.from_int(1), q.zero()}));
  EXPECT_TRUE(s.try_add({q.zero(), q.from_int(1), q.from_int(1)}));
  EXPECT_FALSE(s.try_add({q.from_int(2), q.from_int(3), q.from_int(1)}));
  auto c = s.coordinates({q.from_int(2), q.from_int(3), q.from_int(1)});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(q.to_string((*c)[0]), "2");
  EXPECT_EQ(q.to_string((*c)[1]), "1");
  EXPECT_FALSE(s.coordinates({q.from_int(1), q.zero(), q.zero()}).has_value());
  EXPECT_FALSE(s.try_add(zero_vector(q, 3)));
}
