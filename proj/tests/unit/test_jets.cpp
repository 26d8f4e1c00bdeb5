#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jhi/errors.hpp"
#include "jhi/jets.hpp"

using jhi::Dual;
using jhi::Series;
using S = jhi::TruncatedSeries;

namespace {

// f(a(s)) sampled on a 7-point stencil; returns the i-th derivative at 0.
template <class F>
double fd_derivative(F f, int i, double h) {
  const double fm3 = f(-3 * h), fm2 = f(-2 * h), fm1 = f(-h), f0 = f(0.0), f1 = f(h),
               f2 = f(2 * h), f3 = f(3 * h);
  switch (i) {
    case 0:
      return f0;
    case 1:
      return (-fm3 + 9 * fm2 - 45 * fm1 + 45 * f1 - 9 * f2 + f3) / (60 * h);
    case 2:
      return (2 * fm3 - 27 * fm2 + 270 * fm1 - 490 * f0 + 270 * f1 - 27 * f2 + 2 * f3) /
             (180 * h * h);
    default:
      return (fm3 - 8 * fm2 + 13 * fm1 - 13 * f1 + 8 * f2 - f3) / (8 * h * h * h);
  }
}

double poly(const S& a, double s) {
  double r = 0.0;
  for (int j = a.order(); j >= 0; --j) r = r * s + a[j];
  return r;
}

}  // namespace

TEST(Series, ProductOfOnePlusS) {
  const auto r = S::of(1, 1, 0) * S::of(1, 1, 0);
  EXPECT_EQ(r[0], 1.0);
  EXPECT_EQ(r[1], 2.0);
  EXPECT_EQ(r[2], 1.0);
}

TEST(Series, AdditiveIdentity) {
  const auto a = S::of(0.3, -1.7);
  const auto r = a + S::of(0, 0);
  EXPECT_EQ(r[0], 0.3);
  EXPECT_EQ(r[1], -1.7);
}

TEST(Series, ReciprocalOfOnePlusS) {
  const auto r = S::of(1, 0, 0) / S::of(1, 1, 0);
  EXPECT_NEAR(r[0], 1.0, 1e-15);
  EXPECT_NEAR(r[1], -1.0, 1e-15);
  EXPECT_NEAR(r[2], 1.0, 1e-15);
}

TEST(Series, DivisionBySeriesWithZeroConstantThrows) {
  EXPECT_THROW(S::of(1, 0) / S::of(0, 1), jhi::SingularSeriesError);
}

TEST(Series, MismatchedOrdersThrow) {
  EXPECT_THROW(S::of(1, 1) + S::of(1, 1, 1), jhi::TruncationOrderError);
}

TEST(Series, BroadcastConstantAdoptsOrder) {
  const auto r = 2.0 * S::of(1, 1, 1) + 1.0;
  EXPECT_EQ(r.order(), 2);
  EXPECT_EQ(r[0], 3.0);
  EXPECT_EQ(r[2], 2.0);
}

TEST(Series, ElementaryExamples) {
  const auto e = exp(S::of(0, 1));
  EXPECT_NEAR(e[0], 1.0, 1e-15);
  EXPECT_NEAR(e[1], 1.0, 1e-15);

  const auto c = cos(S::of(0, 0, 0));
  EXPECT_EQ(c[0], 1.0);
  EXPECT_EQ(c[1], 0.0);
  EXPECT_EQ(c[2], 0.0);

  const auto l = log(S::of(1, 1, 0));
  EXPECT_NEAR(l[0], 0.0, 1e-15);
  EXPECT_NEAR(l[1], 1.0, 1e-15);
  EXPECT_NEAR(l[2], -0.5, 1e-15);
  // same thing by finite differences of log(1+s)
  const auto f = [](double s) { return std::log1p(s); };
  EXPECT_NEAR(fd_derivative(f, 1, 1e-3), l[1], 1e-8);
  EXPECT_NEAR(fd_derivative(f, 2, 1e-3) / 2.0, l[2], 1e-8);
}

TEST(Series, DomainErrorsNameTheFunction) {
  try {
    (void)log(S::of(-1.0, 1.0));
    FAIL() << "log of a negative constant term accepted";
  } catch (const jhi::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("log"), std::string::npos);
  }
  EXPECT_THROW((void)sqrt(S::of(0.0, 1.0)), jhi::DomainError);
  EXPECT_THROW((void)pow(S::of(-2.0, 1.0), 0.5), jhi::DomainError);
  EXPECT_NO_THROW((void)pow(S::of(-2.0, 1.0), 3.0));
}

TEST(Series, ExtractDerivative) {
  const auto a = S::of(3, 2, 5);
  EXPECT_EQ(jhi::extract_derivative(a, 0), 3.0);
  EXPECT_EQ(jhi::extract_derivative(a, 2), 10.0);
  EXPECT_EQ(jhi::extract_derivative(S::of(0, 0, 1.5, 0.25), 3), 1.5);
  EXPECT_THROW(jhi::extract_derivative(a, 3), jhi::TruncationOrderError);
}

TEST(SeriesProperty, IntegerProductIsExactConvolution) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-50, 50);
  for (int trial = 0; trial < 200; ++trial) {
    S a = S::zero(4), b = S::zero(4);
    for (int j = 0; j <= 4; ++j) {
      a[j] = coef(rng);
      b[j] = coef(rng);
    }
    const auto r = a * b;
    for (int k = 0; k <= 4; ++k) {
      double c = 0.0;
      for (int j = 0; j <= k; ++j) c += a[j] * b[k - j];
      ASSERT_EQ(r[k], c) << "trial " << trial << " coefficient " << k;
    }
  }
}

TEST(SeriesProperty, ElementaryDerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> c0(0.5, 2.0), ci(-0.5, 0.5);
  struct Fn {
    const char* name;
    S (*series)(const S&);
    double (*scalar)(double);
  };
  const Fn fns[] = {
      {"exp", [](const S& a) { return exp(a); }, [](double x) { return std::exp(x); }},
      {"log", [](const S& a) { return log(a); }, [](double x) { return std::log(x); }},
      {"sin", [](const S& a) { return sin(a); }, [](double x) { return std::sin(x); }},
      {"cos", [](const S& a) { return cos(a); }, [](double x) { return std::cos(x); }},
      {"sqrt", [](const S& a) { return sqrt(a); }, [](double x) { return std::sqrt(x); }},
      {"pow", [](const S& a) { return pow(a, -1.5); }, [](double x) { return std::pow(x, -1.5); }},
  };
  for (const auto& fn : fns) {
    for (int trial = 0; trial < 100; ++trial) {
      S a = S::zero(3);
      a[0] = c0(rng);
      for (int j = 1; j <= 3; ++j) a[j] = ci(rng);
      const auto r = fn.series(a);
      const auto f = [&](double s) { return fn.scalar(poly(a, s)); };
      for (int i = 0; i <= 3; ++i) {
        const double h = 5e-3;
        const double fd = fd_derivative(f, i, h);
        const double ex = jhi::extract_derivative(r, i);
        ASSERT_NEAR(ex, fd, 1e-6 * (1.0 + std::abs(fd))) << fn.name << " i=" << i;
      }
    }
  }
}

TEST(Gradient, ContactLiftedHamiltonian) {
  const std::array<double, 4> s{0.1, -1.1, 0.09, 1.0};
  const auto [v, g] =
      jhi::evaluate_with_gradient<4>([](const auto& x) { return x[3] * (x[0] + x[2]); }, s);
  EXPECT_NEAR(v, 0.19, 1e-15);
  EXPECT_NEAR(g[0], 1.0, 1e-15);
  EXPECT_NEAR(g[1], 0.0, 1e-15);
  EXPECT_NEAR(g[2], 1.0, 1e-15);
  EXPECT_NEAR(g[3], 0.19, 1e-15);
}

TEST(Gradient, ConstantAndQuadratic) {
  const auto [v, g] = jhi::evaluate_with_gradient<3>(
      [](const auto& x) { return decltype(x[0])(7.0); }, std::array<double, 3>{1, 2, 3});
  EXPECT_EQ(v, 7.0);
  for (double gi : g) EXPECT_EQ(gi, 0.0);

  const auto [v2, g2] = jhi::evaluate_with_gradient<3>(
      [](const auto& x) { return x[0] * x[0] + x[1] * x[1]; }, std::array<double, 3>{1, 1, 1});
  EXPECT_EQ(v2, 2.0);
  EXPECT_EQ(g2[0], 2.0);
  EXPECT_EQ(g2[1], 2.0);
  EXPECT_EQ(g2[2], 0.0);
}

TEST(Gradient, NonFiniteValueIsAnError) {
  EXPECT_THROW(jhi::evaluate_with_gradient<1>([](const auto& x) { return 1.0 / (x[0] - 1.0); },
                                              std::array<double, 1>{1.0}),
               jhi::NumericalError);
}

TEST(Gradient, DualOverSeriesCarriesBothDirections) {
  // d/dx of exp(x (1 + s)) at x = 0.5: coefficients (1 + s) exp(x (1 + s)).
  using D = jhi::DualOverSeries<1>;
  D x = D::variable(S::constant(2, 0.5), 0);
  const D r = exp(x * D(S::of(1, 1, 0)));
  const double e = std::exp(0.5);
  EXPECT_NEAR(r.v[0], e, 1e-14);
  EXPECT_NEAR(r.v[1], 0.5 * e, 1e-14);
  EXPECT_NEAR(r.d[0][0], e, 1e-14);
  EXPECT_NEAR(r.d[0][1], e + 0.5 * e, 1e-14);
}
