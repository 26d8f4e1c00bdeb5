#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jhi/jacobi.hpp"
#include "jhi/models.hpp"
#include "jhi/properties.hpp"

using jhi::Vec;

namespace {

struct Zero2D {
  static constexpr std::size_t dim = 2;
  template <class T>
  jhi::Mat<T, 2> lambda(const Vec<T, 2>&) const {
    return jhi::zero_matrix<T, 2>();
  }
  template <class T>
  Vec<T, 2> e(const Vec<T, 2>&) const {
    return {T(0.0), T(0.0)};
  }
};

struct ZeroH {
  template <class T>
  T operator()(const Vec<T, 3>& x) const {
    return 0.0 * x[0];
  }
};

// Standard symplectic bracket on (q, p) as a Poisson structure with E = 0.
struct Canonical2D {
  static constexpr std::size_t dim = 2;
  template <class T>
  jhi::Mat<T, 2> lambda(const Vec<T, 2>&) const {
    jhi::Mat<T, 2> l = jhi::zero_matrix<T, 2>();
    l[0][1] = T(1.0);
    l[1][0] = T(-1.0);
    return l;
  }
  template <class T>
  Vec<T, 2> e(const Vec<T, 2>&) const {
    return {T(0.0), T(0.0)};
  }
};

}  // namespace

TEST(JacobiField, ContactExample) {
  const jhi::ContactModel m;
  const auto v = jhi::jacobi_vector_field(m.structure, m.hamiltonian, Vec<double, 3>{0.1, -1.1, 0.09});
  EXPECT_NEAR(v[0], 0.0, 1e-15);
  EXPECT_NEAR(v[1], -0.1, 1e-15);
  EXPECT_NEAR(v[2], 0.19, 1e-15);
}

TEST(JacobiField, ZeroHamiltonianGivesZeroField) {
  const jhi::ContactModel m;
  const auto v = jhi::jacobi_vector_field(m.structure, ZeroH{}, Vec<double, 3>{0.4, 2.0, -1.0});
  for (double c : v) EXPECT_EQ(c, 0.0);
}

TEST(JacobiField, Planar2DAgainstFiniteDifferences) {
  const jhi::Jacobi2DModel m;
  const Vec<double, 2> x{1.0, 1.0};
  const auto v = jhi::jacobi_vector_field(m.structure, m.hamiltonian, x);
  // H = x^2 + y^2 by hand: central differences and the explicit Lambda, E.
  const auto h = [](double a, double b) { return a * a + b * b; };
  const double eps = 1e-6;
  const double hx = (h(1 + eps, 1) - h(1 - eps, 1)) / (2 * eps);
  const double hy = (h(1, 1 + eps) - h(1, 1 - eps)) / (2 * eps);
  const double r2 = 2.0;
  const double ex = -2.0 * x[1], ey = 2.0 * x[0];
  EXPECT_NEAR(v[0], r2 * hy - h(1, 1) * ex, 1e-8);
  EXPECT_NEAR(v[1], -r2 * hx - h(1, 1) * ey, 1e-8);
}

TEST(PoissonMatrix, ContactEntries) {
  const jhi::ContactModel m;
  const auto pi = jhi::poisson_matrix(m.structure, Vec<double, 4>{0.1, -1.1, 0.09, 1.0});
  // rows/cols: q p z t
  EXPECT_DOUBLE_EQ(pi[1][0], 1.0);
  EXPECT_DOUBLE_EQ(pi[1][2], -1.1);
  EXPECT_DOUBLE_EQ(pi[3][2], -1.0);
  EXPECT_DOUBLE_EQ(pi[0][1], -1.0);
  EXPECT_DOUBLE_EQ(pi[2][1], 1.1);
  EXPECT_DOUBLE_EQ(pi[2][3], 1.0);
  EXPECT_EQ(pi[0][2], 0.0);
  EXPECT_EQ(pi[0][3], 0.0);
  EXPECT_EQ(pi[1][3], 0.0);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(pi[i][i], 0.0);
}

TEST(PoissonMatrix, LambdaBlockScalesWithOneOverT) {
  const jhi::RigidBodyModel m;
  const Vec<double, 4> s1{0.3, -0.7, 1.2, 1.0};
  Vec<double, 4> s2 = s1;
  s2[3] = 2.0;
  const auto a = jhi::poisson_matrix(m.structure, s1);
  const auto b = jhi::poisson_matrix(m.structure, s2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(b[i][j], 0.5 * a[i][j]);
    EXPECT_DOUBLE_EQ(b[3][i], a[3][i]);
    EXPECT_DOUBLE_EQ(b[i][3], a[i][3]);
  }
}

TEST(PoissonMatrix, PoissonCaseHasEmptyLastRow) {
  const auto pi = jhi::poisson_matrix(Canonical2D{}, Vec<double, 3>{0.2, 0.3, 1.5});
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(pi[2][i], 0.0);
    EXPECT_EQ(pi[i][2], 0.0);
  }
}

TEST(PoissonMatrix, ZeroScaleThrows) {
  const jhi::ContactModel m;
  EXPECT_THROW(jhi::poisson_matrix(m.structure, Vec<double, 4>{0, 0, 0, 0}),
               jhi::SingularScaleError);
}

TEST(LiftedHamiltonian, ContactExamples) {
  const jhi::ContactModel m;
  EXPECT_NEAR(jhi::lifted_hamiltonian(m.hamiltonian, Vec<double, 4>{0.1, -1.1, 0.09, 1.0}), 0.19,
              1e-15);
  EXPECT_NEAR(jhi::lifted_hamiltonian(m.hamiltonian, Vec<double, 4>{0.1, -1.1, 0.09, 2.0}), 0.38,
              1e-15);
  EXPECT_EQ(jhi::lifted_hamiltonian(ZeroH{}, Vec<double, 4>{0.1, -1.1, 0.09, 2.0}), 0.0);
}

namespace {

struct SquareH {
  template <class T>
  T operator()(const Vec<T, 2>& x) const {
    return x[0] * x[0] + x[1] * x[1];
  }
};

// Planar Lambda with the wrong Reeb field.
struct BrokenReeb {
  static constexpr std::size_t dim = 2;
  template <class T>
  jhi::Mat<T, 2> lambda(const Vec<T, 2>& x) const {
    return jhi::Planar2DStructure{}.lambda(x);
  }
  template <class T>
  Vec<T, 2> e(const Vec<T, 2>& x) const {
    return {T(1.0), T(0.0)};
  }
};

}  // namespace

TEST(LiftedField, ContactExample) {
  const jhi::ContactModel m;
  const auto v = jhi::lifted_vector_field(m.structure, m.hamiltonian,
                                          Vec<double, 4>{0.1, -1.1, 0.09, 1.0});
  EXPECT_NEAR(v[0], 0.0, 1e-15);
  EXPECT_NEAR(v[1], -0.1, 1e-15);
  EXPECT_NEAR(v[2], 0.19, 1e-15);
  EXPECT_NEAR(v[3], -1.0, 1e-15);
}

TEST(LiftedField, PoissonCaseLeavesTFixed) {
  const auto v = jhi::lifted_vector_field(Canonical2D{}, SquareH{}, Vec<double, 3>{0.2, 0.3, 1.5});
  EXPECT_EQ(v[2], 0.0);
}

TEST(Homogeneity, Actions) {
  const Vec<double, 3> s{0.2, -0.4, 1.5};
  EXPECT_EQ(jhi::homogeneity_action(s, 1.0), s);
  const auto back = jhi::homogeneity_action(jhi::homogeneity_action(s, 3.0), 1.0 / 3.0);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(back[i], s[i], 1e-15);

  const Vec<double, 3> base{0.2, -0.4, 1.0};
  const auto [b2, xi2] = jhi::cotangent_homogeneity(base, Vec<double, 3>{0.5, -1.0, 0.7}, 2.0);
  EXPECT_EQ(b2, (Vec<double, 3>{0.2, -0.4, 2.0}));
  EXPECT_EQ(xi2, (Vec<double, 3>{1.0, -2.0, 0.7}));

  EXPECT_THROW(jhi::homogeneity_action(s, 0.0), jhi::InvalidScaleError);
  const jhi::CotangentData c(jhi::ExtendedState({0.2, -0.4}, 1.0), {0.5, -1.0}, 0.7);
  const auto c2 = jhi::cotangent_homogeneity(c, 2.0);
  EXPECT_EQ(c2.base.t, 2.0);
  EXPECT_EQ(c2.xi_x, (std::vector<double>{1.0, -2.0}));
  EXPECT_EQ(c2.xi_t, 0.7);
  EXPECT_THROW(jhi::ExtendedState({1.0}, 0.0), jhi::SingularScaleError);
  EXPECT_THROW(jhi::CotangentData(jhi::ExtendedState({1.0}, 1.0), {1.0, 2.0}, 0.0),
               jhi::ConfigurationError);
}

TEST(JacobiConditions, ContactAtRandomPoints) {
  const jhi::ContactModel m;
  std::mt19937_64 rng(3);
  std::vector<Vec<double, 3>> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(jhi::jacobi_part(m.sample_state(rng)));
  const auto rep = jhi::verify_jacobi_conditions(m.structure, pts, 1e-10);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.max_residual(), 1e-10);
}

TEST(JacobiConditions, TrivialStructureHasZeroResidual) {
  const auto rep = jhi::verify_jacobi_conditions(Zero2D{}, {{0.3, 0.1}, {-2.0, 5.0}}, 0.0);
  EXPECT_EQ(rep.max_residual(), 0.0);
}

TEST(JacobiConditions, LotkaVolterraFamily) {
  jhi::LotkaVolterraStructure s;
  s.a = 1.3;
  s.c = 0.7;
  s.d = 0.4;
  s.f = -0.9;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  std::vector<Vec<double, 2>> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({u(rng), u(rng)});
  EXPECT_LE(jhi::verify_jacobi_conditions(s, pts, 1e-10).max_residual(), 1e-10);
}

TEST(JacobiConditions, BrokenStructureIsDetected) {
  const auto rep = jhi::verify_jacobi_conditions(BrokenReeb{}, {{0.5, 0.8}}, 1e-8);
  EXPECT_FALSE(rep.passed);
  EXPECT_GT(rep.max_residual(), 1e-3);
}

// Randomized identities over the whole catalog.
template <class Model>
class JacobiProperties : public ::testing::Test {};

using AllModels = ::testing::Types<jhi::ContactModel, jhi::DampedModel, jhi::Jacobi2DModel,
                                   jhi::Jacobi3DModel, jhi::Jacobi4DModel,
                                   jhi::LotkaVolterraModel, jhi::RigidBodyModel>;
TYPED_TEST_SUITE(JacobiProperties, AllModels);

TYPED_TEST(JacobiProperties, AntisymmetricPoissonMatrix) {
  const TypeParam m;
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const auto s = m.sample_state(rng);
    const auto pi = jhi::poisson_matrix(m.structure, s);
    double big = 0.0, asym = 0.0;
    for (std::size_t i = 0; i < TypeParam::M; ++i) {
      for (std::size_t j = 0; j < TypeParam::M; ++j) {
        big = std::max(big, std::abs(pi[i][j]));
        asym = std::max(asym, std::abs(pi[i][j] + pi[j][i]));
      }
    }
    ASSERT_LE(asym, 1e-12 * std::max(1.0, big));
  }
}

TYPED_TEST(JacobiProperties, LiftedHamiltonianIsConserved) {
  const TypeParam m;
  std::mt19937_64 rng(19);
  for (int k = 0; k < 100; ++k) {
    const auto s = m.sample_state(rng);
    const auto [h, dh] = jhi::evaluate_with_gradient<TypeParam::M>(
        [&](const auto& v) { return jhi::lifted_hamiltonian(m.hamiltonian, v); }, s);
    const auto f = jhi::lifted_vector_field(m.structure, m.hamiltonian, s);
    double dot = 0.0;
    for (std::size_t i = 0; i < TypeParam::M; ++i) dot += dh[i] * f[i];
    ASSERT_LE(std::abs(dot), 1e-9 * (1.0 + std::abs(h)));
  }
}

TYPED_TEST(JacobiProperties, DissipationIdentity) {
  const TypeParam m;
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const auto x = jhi::jacobi_part(m.sample_state(rng));
    const auto [h, dh] = jhi::evaluate_with_gradient<TypeParam::n>(m.hamiltonian, x);
    const auto xh = jhi::jacobi_vector_field(m.structure, m.hamiltonian, x);
    double dot = 0.0;
    for (std::size_t i = 0; i < TypeParam::n; ++i) dot += dh[i] * xh[i];
    const double expect = -h * jhi::reeb_derivative(m.structure, m.hamiltonian, x);
    ASSERT_NEAR(dot, expect, 1e-9 * (1.0 + std::abs(expect)));
  }
}

TYPED_TEST(JacobiProperties, JacobiConditionsHold) {
  const auto r = jhi::check_jacobi_structure(TypeParam{}, 100, 29, 1e-8);
  EXPECT_TRUE(r.passed()) << r.failures << " of " << r.cases << ", worst " << r.worst;
}

TYPED_TEST(JacobiProperties, LiftedFieldIsPiTimesGradient) {
  const auto r = jhi::check_lifted_field_identity(TypeParam{}, 100, 31);
  EXPECT_TRUE(r.passed()) << r.failures << " of " << r.cases << ", worst " << r.worst;
}

TYPED_TEST(JacobiProperties, CasimirsSpanTheKernel) {
  const auto r = jhi::check_casimirs(TypeParam{}, 100, 37);
  EXPECT_TRUE(r.passed()) << r.failures << " of " << r.cases << ", worst " << r.worst;
}
