#include "oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lscat;
using testing_support::complex;
using testing_support::fixture;

namespace {

const std::vector<std::string> kComplexes = {"point", "circle3", "circle6", "sphere2", "disk", "torus", "rp2"};

struct PairCase {
  std::string complex;
  std::string sub;
};

std::vector<PairCase> all_cases() {
  std::vector<PairCase> out;
  for (const auto& c : kComplexes) out.push_back({c, ""});
  out.push_back({"disk", "boundary"});
  out.push_back({"torus", "diagonal"});
  return out;
}

template <class Field>
RingPtr<Field> ring_for(const PairCase& c, const Field& f) {
  auto k = complex(c.complex);
  return c.sub.empty() ? build_ring(k, f) : build_ring(k, Subcomplex::named(*k, c.sub), f);
}

template <class Field>
bool equal_vec(const Field& f, const Vec<Field>& a, const Vec<Field>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!f.equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

TEST(Cohomology, BettiNumbersMatchOracle) {
  for (const auto& c : all_cases())
    for (int p : {0, 2, 3}) {
      const auto expected = oracle::betti(fixture("complexes/" + c.complex + ".json"), c.sub, p);
      with_field(CoefficientField{p}, [&](const auto& f) {
        EXPECT_EQ(ring_for(c, f)->betti(), expected) << c.complex << "," << c.sub << " p=" << p;
      });
    }
}

TEST(Cohomology, KnownBettiNumbers) {
  Rationals q;
  PrimeField f2(2);
  using V = std::vector<std::size_t>;
  EXPECT_EQ(build_ring(complex("torus"), q)->betti(), (V{1, 2, 1}));
  EXPECT_EQ(build_ring(complex("sphere2"), q)->betti(), (V{1, 0, 1}));
  EXPECT_EQ(build_ring(complex("rp2"), q)->betti(), (V{1, 0, 0}));
  EXPECT_EQ(build_ring(complex("rp2"), f2)->betti(), (V{1, 1, 1}));
  auto t = complex("torus");
  EXPECT_EQ(build_ring(t, Subcomplex::named(*t, "diagonal"), q)->betti(), (V{0, 1, 1}));
  auto d = complex("disk");
  EXPECT_EQ(build_ring(d, Subcomplex::named(*d, "boundary"), q)->betti(), (V{0, 0, 1}));
}

TEST(Cohomology, CoboundarySquaresToZero) {
  for (const auto& c : all_cases()) {
    auto k = complex(c.complex);
    auto cc = build_cochain_complex(k, c.sub.empty() ? Subcomplex::empty() : Subcomplex::named(*k, c.sub), Rationals{});
    for (int d = 0; d + 1 <= cc->top_degree(); ++d) {
      auto dd = cc->coboundary(d + 1) * cc->coboundary(d);
      for (std::size_t r = 0; r < dd.rows(); ++r)
        for (std::size_t col = 0; col < dd.cols(); ++col)
          EXPECT_TRUE(dd.field().is_zero(dd(r, col))) << c.complex << " degree " << d;
    }
  }
}

TEST(Cohomology, EulerCharacteristicMatchesSimplexCount) {
  for (const auto& c : all_cases()) {
    auto k = complex(c.complex);
    auto a = c.sub.empty() ? Subcomplex::empty() : Subcomplex::named(*k, c.sub);
    long simplices = 0;
    for (const auto& s : k->simplices())
      if (!a.contains(s)) simplices += (s.size() % 2 == 1) ? 1 : -1;
    long betti = 0;
    const auto b = build_ring(k, a, Rationals{})->betti();
    for (std::size_t i = 0; i < b.size(); ++i) betti += (i % 2 == 0 ? 1 : -1) * static_cast<long>(b[i]);
    EXPECT_EQ(betti, simplices) << c.complex << "," << c.sub;
  }
}

TEST(Cohomology, TorusProductIsAntiCommutative) {
  Rationals q;
  auto r = build_ring(complex("torus"), q);
  const auto& h = r->algebra();
  ASSERT_EQ(h.dims(), (std::vector<std::size_t>{1, 2, 1}));
  const auto a = h.basis_vector(1), b = h.basis_vector(2);
  const auto ab = h.multiply(a, b), ba = h.multiply(b, a);
  EXPECT_FALSE(is_zero_vector(q, ab));
  EXPECT_TRUE(equal_vec(q, ab, scaled(q, q.from_int(-1), ba)));
  EXPECT_TRUE(is_zero_vector(q, h.multiply(a, a)));
  EXPECT_TRUE(is_zero_vector(q, h.multiply(b, b)));
}

TEST(Cohomology, ProjectivePlaneSquareDependsOnField) {
  PrimeField f2(2);
  auto r = build_ring(complex("rp2"), f2);
  const auto& h = r->algebra();
  ASSERT_EQ(h.dim(), 3u);
  const auto a = h.basis_vector(1);
  EXPECT_TRUE(equal_vec(f2, h.multiply(a, a), h.basis_vector(2)));
}

TEST(Cohomology, RingAxioms) {
  for (const auto& c : all_cases())
    for (int p : {0, 2}) {
      with_field(CoefficientField{p}, [&](const auto& f) {
        auto r = ring_for(c, f);
        const auto& h = r->algebra();
        const std::size_t n = h.dim();
        if (h.unit()) {
          for (std::size_t i = 0; i < n; ++i) {
            EXPECT_TRUE(equal_vec(f, h.multiply(*h.unit(), h.basis_vector(i)), h.basis_vector(i)));
            EXPECT_TRUE(equal_vec(f, h.multiply(h.basis_vector(i), *h.unit()), h.basis_vector(i)));
          }
        }
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const auto x = h.basis_vector(i), y = h.basis_vector(j);
            const int sign = (h.degree(i) * h.degree(j)) % 2 ? -1 : 1;
            EXPECT_TRUE(equal_vec(f, h.multiply(x, y), scaled(f, f.from_int(sign), h.multiply(y, x))))
                << c.complex << " " << i << "," << j;
            for (std::size_t k = 0; k < n; ++k) {
              const auto z = h.basis_vector(k);
              EXPECT_TRUE(equal_vec(f, h.multiply(h.multiply(x, y), z), h.multiply(x, h.multiply(y, z))));
            }
          }
      });
    }
}

TEST(Cohomology, ProductIsIndependentOfRepresentatives) {
  // shifting a representative by a coboundary must not change any product
  Rationals q;
  auto r = build_ring(complex("torus"), q);
  auto cc = r->cochains();
  for (std::size_t i = 1; i <= 2; ++i) {
    auto alpha = r->representative(1, r->algebra().basis_vector(i));
    auto shift = cc->coboundary(0).column(0);
    for (std::size_t t = 0; t < alpha.size(); ++t) alpha[t] = q.add(alpha[t], shift[t]);
    EXPECT_TRUE(equal_vec(q, r->class_of(1, alpha), r->algebra().basis_vector(i)));
    for (std::size_t j = 1; j <= 2; ++j) {
      auto beta = r->representative(1, r->algebra().basis_vector(j));
      auto prod = cup_cochains(*cc, 1, alpha, *cc, 1, beta, *cc);
      EXPECT_TRUE(equal_vec(q, r->class_of(2, prod), r->algebra().basis_product(i, j)));
    }
  }
}

TEST(Cohomology, NonCocycleRejected) {
  Rationals q;
  auto r = build_ring(complex("circle3"), q);
  auto v = zero_vector(q, r->cochains()->rank_in_degree(0));
  v[0] = q.one();
  EXPECT_THROW(r->class_of(0, v), std::invalid_argument);
}

TEST(Cohomology, RelativeTimesAbsolute) {
  Rationals q;
  auto t = complex("torus");
  auto rel = build_ring(t, Subcomplex::named(*t, "diagonal"), q);
  auto abs = build_ring(t, q);
  for (std::size_t i = 0; i < rel->dim(); ++i) {
    const auto x = rel->algebra().basis_vector(i);
    EXPECT_TRUE(equal_vec(q, relative_cup(*rel, x, *abs, *abs->algebra().unit()), x));
  }
  // the relative degree-1 class times some absolute degree-1 class is the top class
  bool hit = false;
  for (std::size_t j = 1; j <= 2; ++j)
    hit |= !is_zero_vector(q, relative_cup(*rel, rel->algebra().basis_vector(0), *abs, abs->algebra().basis_vector(j)));
  EXPECT_TRUE(hit);
  EXPECT_THROW(relative_cup(*abs, abs->algebra().basis_vector(0), *rel, rel->algebra().basis_vector(0)), DomainError);
}

TEST(Induced, DegreeMapsMultiplyByDegree) {
  for (int p : {1, 2, 3}) {
    auto f = testing_support::map("degree" + std::to_string(p));
    Rationals q;
    auto phi = induced_map(*f, q);
    auto b1 = phi.block(1);
    ASSERT_EQ(b1.rows(), 1u);
    ASSERT_EQ(b1.cols(), 1u);
    // the sign depends on the chosen generators; the absolute value is the degree
    const auto v = b1(0, 0);
    EXPECT_TRUE(q.equal(v, q.from_int(p)) || q.equal(v, q.from_int(-p))) << "degree " << p;
    EXPECT_TRUE(q.equal(phi.block(0)(0, 0), q.one()));
  }
  PrimeField f3(3);
  auto phi3 = induced_map(*testing_support::map("degree3"), f3);
  EXPECT_TRUE(f3.is_zero(phi3.block(1)(0, 0)));
}

TEST(Induced, ConstantMapKillsPositiveDegrees) {
  Rationals q;
  auto phi = induced_map(*testing_support::map("constant_circle"), q);
  EXPECT_TRUE(q.is_zero(phi.block(1)(0, 0)));
  EXPECT_TRUE(q.equal(phi.block(0)(0, 0), q.one()));
}

TEST(Induced, IdentityAndComposition) {
  Rationals q;
  auto torus = complex("torus");
  auto circle = complex("circle3");
  auto ht = build_ring(torus, q);
  auto hc = build_ring(circle, q);
  auto id = induced_map(SimplicialMap::identity(torus), ht, ht);
  EXPECT_TRUE(id.linear() == RingMap<Rationals>::identity(ht).linear());

  auto loop = testing_support::map("diagonal_loop");
  auto proj = testing_support::map("torus_projection");
  SimplicialMap f("loop", circle, torus, loop->vertex_image());
  SimplicialMap g("proj", torus, circle, proj->vertex_image());
  auto fstar = induced_map(f, ht, hc);
  auto gstar = induced_map(g, hc, ht);
  auto composite = induced_map(compose(g, f), hc, hc);
  EXPECT_TRUE(composite.linear() == fstar.after(gstar).linear());
  // proj ∘ loop is the identity on vertices
  EXPECT_TRUE(composite.linear() == RingMap<Rationals>::identity(hc).linear());
}

TEST(Induced, MapsAreMultiplicative) {
  Rationals q;
  for (const char* name : {"degree2", "constant_circle", "torus_projection", "diagonal_loop", "circle_to_point"}) {
    auto f = testing_support::map(name);
    auto phi = induced_map(*f, q);
    const auto& from = phi.source()->algebra();
    const auto& to = phi.target()->algebra();
    for (std::size_t i = 0; i < from.dim(); ++i)
      for (std::size_t j = 0; j < from.dim(); ++j) {
        const auto lhs = phi.apply(from.multiply(from.basis_vector(i), from.basis_vector(j)));
        const auto rhs = to.multiply(phi.apply(from.basis_vector(i)), phi.apply(from.basis_vector(j)));
        EXPECT_TRUE(equal_vec(q, lhs, rhs)) << name << " " << i << "," << j;
      }
    if (from.unit() && to.unit()) {
      EXPECT_TRUE(equal_vec(q, phi.apply(*from.unit()), *to.unit())) << name;
    }
  }
}

TEST(Induced, RelativeIdentityOfPair) {
  Rationals q;
  auto d = complex("disk");
  auto pair = build_ring(d, Subcomplex::named(*d, "boundary"), q);
  auto phi = induced_map(SimplicialMap::identity(d, std::string("boundary")), pair, pair);
  EXPECT_TRUE(phi.linear() == RingMap<Rationals>::identity(pair).linear());
  EXPECT_FALSE(phi.is_absolute());
}
