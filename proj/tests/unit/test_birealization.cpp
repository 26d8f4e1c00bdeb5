#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <type_traits>

#include "jhi/birealization.hpp"
#include "jhi/models.hpp"
#include "jhi/properties.hpp"

using jhi::Vec;

namespace {

template <std::size_t M>
double max_abs_diff(const Vec<double, M>& a, const Vec<double, M>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < M; ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

// Closed form of the contact realization as displayed with the opposite
// covector orientation; ours equals it at -xi.
Vec<double, 4> contact_display(const Vec<double, 4>& s, const Vec<double, 4>& xi) {
  const double q = s[0], p = s[1], z = s[2], t = s[3];
  return {q - xi[1] / (2 * t), (t * p + xi[0] / 2) / (t - xi[2] / 2),
          z + xi[3] / 2 - p * xi[1] / (2 * t), t - xi[2] / 2};
}

Vec<double, 4> jacobi3d_display(const Vec<double, 4>& s, const Vec<double, 4>& xi) {
  const double t = s[3], d = t - xi[0] / 2;
  return {s[0] + xi[3] / 2 - (s[1] * xi[1] + s[2] * xi[2]) / t, t * t * s[1] / (d * d),
          t * t * s[2] / (d * d), d};
}

struct IdentityChange {
  static constexpr std::size_t M = 3;
  template <class T>
  Vec<T, 3> forward(const Vec<T, 3>& s) const {
    return s;
  }
  template <class T>
  Vec<T, 3> inverse(const Vec<T, 3>& s) const {
    return s;
  }
  template <class T>
  jhi::Mat<T, 3> jacobian(const Vec<T, 3>&) const {
    auto m = jhi::zero_matrix<T, 3>();
    for (std::size_t i = 0; i < 3; ++i) m[i][i] = T(1.0);
    return m;
  }
  bool domain_ok(const Vec<double, 3>&) const { return true; }
  bool image_ok(const Vec<double, 3>&, const Vec<double, 3>&) const { return true; }
};

}  // namespace

TEST(CanonicalPair, MidpointShift) {
  const jhi::CanonicalPair<2> r{{0, 1}};
  const auto a = r.alpha(Vec<double, 2>{1.0, 1.0}, Vec<double, 2>{0.2, 0.4});
  EXPECT_NEAR(a[0], 0.8, 1e-15);
  EXPECT_NEAR(a[1], 1.1, 1e-15);
  const auto b = r.beta(Vec<double, 2>{1.0, 1.0}, Vec<double, 2>{0.2, 0.4});
  EXPECT_NEAR(b[0], 1.2, 1e-15);
  EXPECT_NEAR(b[1], 0.9, 1e-15);
  EXPECT_EQ(r.alpha(Vec<double, 2>{1.0, 1.0}, Vec<double, 2>{0.0, 0.0}), (Vec<double, 2>{1.0, 1.0}));
}

TEST(CanonicalPair, CasimirSlotPassesThrough) {
  const jhi::CanonicalPair<3> r{{0, 1}};
  const auto a = r.alpha(Vec<double, 3>{1.0, 2.0, 3.0}, Vec<double, 3>{0.5, 0.5, 9.0});
  EXPECT_EQ(a[2], 3.0);
}

TEST(CanonicalPair, MalformedPairingThrows) {
  using P = jhi::CanonicalPair<3>;
  EXPECT_THROW(P({{0, 0}}), jhi::ConfigurationError);
  EXPECT_THROW(P({{0, 3}}), jhi::ConfigurationError);
  EXPECT_THROW(P({{0, 1}, {1, 2}}), jhi::ConfigurationError);
}

TEST(CotangentLift, IdentityChange) {
  const jhi::CotangentData c(jhi::ExtendedState({0.3, -0.2}, 1.4), {0.5, 0.6}, -0.7);
  const auto l = jhi::cotangent_lift(IdentityChange{}, c);
  EXPECT_EQ(l.base.x, c.base.x);
  EXPECT_EQ(l.base.t, c.base.t);
  EXPECT_NEAR(l.xi_x[0], 0.5, 1e-15);
  EXPECT_NEAR(l.xi_x[1], 0.6, 1e-15);
  EXPECT_NEAR(l.xi_t, -0.7, 1e-15);
}

TEST(CotangentLift, ContactRoundTrip) {
  const jhi::ContactChange f;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const Vec<double, 4> s{u(rng), u(rng), u(rng), 1.5 + u(rng)};
    const Vec<double, 4> xi{u(rng), u(rng), u(rng), u(rng)};
    const auto [X, eta] = jhi::cotangent_lift(f, s, xi);
    // pulling eta back through DF must give xi again
    const auto back = jhi::mat_vec(jhi::transpose(f.jacobian(s)), eta);
    EXPECT_LE(max_abs_diff(back, xi), 1e-12);
    EXPECT_LE(max_abs_diff(f.inverse(X), s), 1e-12);
  }
}

TEST(CotangentLift, LotkaVolterraDisplayedFormula) {
  jhi::LotkaVolterraChange f;
  f.a = 1.0;
  f.gamma = 2.0;
  const double x = 4, y = 2, t = 1;
  const Vec<double, 3> s{x, y, t};
  const Vec<double, 3> xi{0.3, -0.5, 0.7};
  const auto [X, eta] = jhi::cotangent_lift(f, s, xi);
  EXPECT_NEAR(eta[0], x * xi[0], 1e-13);
  EXPECT_NEAR(eta[1], -f.a * f.gamma * xi[2] - f.a * y / t * xi[1], 1e-13);
}

TEST(CotangentLift, SingularJacobianThrows) {
  const jhi::PolarChange f;
  EXPECT_THROW(jhi::cotangent_lift(f, Vec<double, 3>{0.0, 0.0, 1.0}, Vec<double, 3>{1, 1, 1}),
               jhi::NumericalError);
}

TEST(Transported, ContactMatchesClosedForm) {
  const jhi::Transported tr(jhi::ContactChange{}, jhi::ContactChange::canonical());
  const jhi::ContactRealization closed;
  const jhi::ContactModel m;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  const auto zero = jhi::zero_vector<double, 4>();
  for (int k = 0; k < 100; ++k) {
    const auto s = m.sample_state(rng);
    const Vec<double, 4> xi{u(rng), u(rng), u(rng), u(rng)};
    EXPECT_LE(max_abs_diff(tr.alpha(s, xi), closed.alpha(s, xi)), 1e-12);
    EXPECT_LE(max_abs_diff(tr.beta(s, xi), closed.beta(s, xi)), 1e-12);
    EXPECT_LE(max_abs_diff(closed.alpha(s, xi), contact_display(s, jhi::negated(xi))), 1e-12);
    EXPECT_LE(max_abs_diff(tr.alpha(s, zero), s), 1e-15);
  }
}

TEST(Transported, Jacobi3DMatchesClosedForm) {
  const jhi::Transported tr(jhi::ScaledCasimirChange{}, jhi::ScaledCasimirChange::canonical());
  const jhi::ScaledCasimirRealization closed;
  const jhi::Jacobi3DModel m;
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int k = 0; k < 100; ++k) {
    const auto s = m.sample_state(rng);
    const Vec<double, 4> xi{u(rng), u(rng), u(rng), u(rng)};
    const auto expect = jacobi3d_display(s, xi);
    EXPECT_LE(max_abs_diff(tr.alpha(s, xi), expect), 1e-12 * (1.0 + jhi::norm_inf(expect)));
    EXPECT_LE(max_abs_diff(closed.alpha(s, xi), expect), 1e-12 * (1.0 + jhi::norm_inf(expect)));
  }
}

TEST(Realization, DomainPredicates) {
  const jhi::ContactRealization c;
  const Vec<double, 4> s{0.1, -1.1, 0.09, 1.0};
  EXPECT_TRUE(c.domain_ok(s, Vec<double, 4>{0, 0, 0.1, 0}));
  EXPECT_FALSE(c.domain_ok(s, Vec<double, 4>{0, 0, -2.0, 0}));
  const jhi::ScaledCasimirRealization r3;
  EXPECT_FALSE(r3.domain_ok(s, Vec<double, 4>{2.0, 0, 0, 0}));
  EXPECT_THROW(r3.alpha(s, Vec<double, 4>{2.0, 0, 0, 0}), jhi::DomainError);

  const jhi::LotkaVolterraModel lv;
  EXPECT_TRUE(lv.realization.domain_ok(Vec<double, 3>{3, 4, 1}, Vec<double, 3>{0.01, 0.01, 0.01}));
  EXPECT_FALSE(lv.realization.domain_ok(Vec<double, 3>{-1, 4, 1}, Vec<double, 3>{0, 0, 0}));
  EXPECT_FALSE(lv.realization.domain_ok(Vec<double, 3>{3, 4, 1}, Vec<double, 3>{100, 0, 0}));
  EXPECT_THROW(lv.realization.alpha(Vec<double, 3>{3, 4, 1}, Vec<double, 3>{100, 0, 0}),
               jhi::DomainError);
}

TEST(FirstOrder, Jacobi4DDisplayedComponents) {
  const jhi::Jacobi4DModel m;
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int k = 0; k < 100; ++k) {
    const auto s = m.sample_state(rng);
    const Vec<double, 5> xi{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const double x1 = s[0], y1 = s[1], x2 = s[2], y2 = s[3], t = s[4];
    const double e = std::exp(y2);
    const auto a = m.realization.alpha(s, xi);
    EXPECT_NEAR(a[0], x1 + 0.5 * (-std::cos(x2) / t * xi[1] + y1 * e * xi[4]), 1e-14);
    EXPECT_NEAR(a[1], y1 + 0.5 * (std::cos(x2) / t * xi[0] + x1 * e * xi[4]), 1e-14);
    EXPECT_EQ(a[2], x2);
    EXPECT_EQ(a[3], y2);
    // the scale component carries the same factor 1/2 as the others
    EXPECT_NEAR(a[4], t - 0.5 * (y1 * e * xi[0] + x1 * e * xi[1]), 1e-14);
  }
}

TEST(FirstOrder, RigidBodyDisplayedComponents) {
  const jhi::RigidBodyModel m;
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int k = 0; k < 100; ++k) {
    const auto s = m.sample_state(rng);
    const Vec<double, 4> xi{u(rng), u(rng), u(rng), u(rng)};
    const double x1 = s[0], x2 = s[1], x3 = s[2], t = s[3];
    const auto f = m.structure.e(jhi::jacobi_part(s));
    const auto a = m.realization.alpha(s, xi);
    const auto b = m.realization.beta(s, xi);
    const Vec<double, 4> expect{
        x1 + 0.5 * (x3 / t * xi[1] + f[0] * xi[3] - x2 / t * xi[2]),
        x2 + 0.5 * (x1 / t * xi[2] + f[1] * xi[3] - x3 / t * xi[0]),
        x3 + 0.5 * (x2 / t * xi[0] + f[2] * xi[3] - x1 / t * xi[1]),
        t - 0.5 * (f[0] * xi[0] + f[1] * xi[1] + f[2] * xi[2])};
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(a[i], expect[i], 1e-14);
      EXPECT_NEAR(b[i], 2.0 * s[i] - expect[i], 1e-14);
    }
  }
}

TEST(LotkaVolterra, UnitReflectionHomogeneity) {
  const jhi::LotkaVolterraModel m;
  std::mt19937_64 rng(59);
  const auto zero = jhi::zero_vector<double, 3>();
  for (int k = 0; k < 100; ++k) {
    const auto s = m.sample_state(rng);
    const auto xi = jhi::detail::random_covector(m, s, rng, 0.1);
    EXPECT_LE(max_abs_diff(m.realization.alpha(s, zero), s), 1e-13 * (1 + jhi::norm_inf(s)));
    EXPECT_LE(max_abs_diff(m.realization.beta(s, xi), m.realization.alpha(s, jhi::negated(xi))),
              1e-12);
    const auto [sz, xiz] = jhi::cotangent_homogeneity(s, xi, 2.0);
    if (!m.realization.domain_ok(sz, xiz)) continue;
    const auto lhs = m.realization.alpha(sz, xiz);
    const auto rhs = jhi::homogeneity_action(m.realization.alpha(s, xi), 2.0);
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-10 * (1 + jhi::norm_inf(rhs)));
  }
}

template <class Model>
class RealizationProperties : public ::testing::Test {};

using AllModels = ::testing::Types<jhi::ContactModel, jhi::DampedModel, jhi::Jacobi2DModel,
                                   jhi::Jacobi3DModel, jhi::Jacobi4DModel,
                                   jhi::LotkaVolterraModel, jhi::RigidBodyModel>;
TYPED_TEST_SUITE(RealizationProperties, AllModels);

TYPED_TEST(RealizationProperties, UnitAndReflection) {
  const auto r = jhi::check_unit_and_reflection(TypeParam{}, 100, 61, 1e-13);
  EXPECT_TRUE(r.passed()) << r.failures << " of " << r.cases << ", worst " << r.worst;
}

TYPED_TEST(RealizationProperties, HomogeneityForPositiveScales) {
  const auto r = jhi::check_realization_homogeneity(TypeParam{}, 100, 67);
  EXPECT_TRUE(r.passed()) << r.failures << " of " << r.cases << ", worst " << r.worst;
}

TYPED_TEST(RealizationProperties, HomogeneityForFixedScales) {
  const TypeParam m;
  std::vector<double> zs{2.0, 0.5};
  if (!std::is_same_v<TypeParam, jhi::LotkaVolterraModel>) zs.push_back(-1.0);
  std::mt19937_64 rng(71);
  for (int k = 0; k < 100; ++k) {
    const auto s = m.sample_state(rng);
    const auto xi = jhi::detail::random_covector(m, s, rng, 0.1);
    for (double z : zs) {
      const auto [sz, xiz] = jhi::cotangent_homogeneity(s, xi, z);
      if (!m.realization.domain_ok(sz, xiz)) continue;
      const auto lhs = m.realization.alpha(sz, xiz);
      const auto rhs = jhi::homogeneity_action(m.realization.alpha(s, xi), z);
      ASSERT_LE(max_abs_diff(lhs, rhs), 1e-10 * (1 + jhi::norm_inf(rhs))) << "z = " << z;
    }
  }
}

TYPED_TEST(RealizationProperties, FirstOrderAgreesWithPoissonMatrix) {
  const auto r = jhi::check_realization_linearization(TypeParam{}, 100, 73);
  EXPECT_TRUE(r.passed()) << r.failures << " of " << r.cases << ", worst " << r.worst;
}
