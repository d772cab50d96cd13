#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace pillow;
using namespace pillow::ellmod;
using testing_util::code_of;

namespace {

const cplx zeta3 = std::polar(1.0, 2 * std::numbers::pi / 3);
const cplx zeta6_5 = std::polar(1.0, 5 * std::numbers::pi / 3);

/// (theta_2 / theta_3)^4 summed term by term over n in [-40, 40].
cplx lambda_by_theta_sums(cplx tau) {
  const cplx i{0.0, 1.0};
  cplx t2 = 0.0, t3 = 0.0;
  for (int n = -40; n <= 40; ++n) {
    double half = n + 0.5;
    t2 += std::exp(i * std::numbers::pi * tau * half * half);
    t3 += std::exp(i * std::numbers::pi * tau * static_cast<double>(n * n));
  }
  return std::pow(t2 / t3, 4);
}

}  // namespace

TEST(Ellmod, Anchors) {
  EXPECT_NEAR(std::abs(agm_K(0.0) - std::numbers::pi / 2), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(lambda_section_t({0.5}).tau - cplx(0, 1)), 0.0, 1e-12);
  cplx x = 15 * std::sqrt(3.0) - 26;
  auto tau = lambda_section_t({x}).tau;
  EXPECT_NEAR(tau.real(), 1.0, 1e-9);
  EXPECT_NEAR(tau.imag(), 2.143182698915, 1e-9);
  EXPECT_EQ(format_complex(tau), "1+2.143182698915i");
  EXPECT_NEAR(std::abs(lambda_theta({zeta3}) - zeta6_5), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(cross_ratio({0.0}, {1.0}, {zeta3}, {zeta3 * zeta3}).value - zeta6_5), 0.0, 1e-12);
}

TEST(Ellmod, AgmMatchesQuadrature) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 30; ++i) {
    cplx k{u(rng), u(rng)};
    EXPECT_NEAR(std::abs(agm_K(k) - oracle::elliptic_K_quadrature(k)), 0.0, 1e-10) << k;
  }
}

TEST(Ellmod, LambdaAgreesWithThetaSums) {
  for (cplx tau : {cplx(0, 1), cplx(0.3, 0.8), cplx(-1.2, 0.4), cplx(1, 2.143182698915), zeta3})
    EXPECT_NEAR(std::abs(lambda_theta({tau}) - lambda_by_theta_sums(tau)), 0.0, 1e-10) << tau;
}

TEST(Ellmod, SectionInvertsLambdaUpToTheAnharmonicGroup) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    cplx x{u(rng), u(rng)};
    if (std::abs(x) < 0.05 || std::abs(x - 1.0) < 0.05) continue;
    auto tau = lambda_section_t({x});
    EXPECT_GT(tau.tau.imag(), 0.0);
    if (tau.tau.imag() < 0.05) continue;
    EXPECT_TRUE(lambda_orbit_equal({lambda_by_theta_sums(tau.tau)}, {x}, 1e-8)) << x;
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

TEST(Ellmod, CrossRatioWithInfinityIsTheLimit) {
  const cplx a{0.3, 1.0}, b{-2.0, 0.5}, c{1.5, -0.7};
  const cplx big{1e9, 0.0};
  auto close = [](cplx x, cplx y) { return std::abs(x - y) < 1e-6; };
  EXPECT_TRUE(close(cross_ratio(ExtComplex::inf(), {a}, {b}, {c}).value, cross_ratio({big}, {a}, {b}, {c}).value));
  EXPECT_TRUE(close(cross_ratio({a}, ExtComplex::inf(), {b}, {c}).value, cross_ratio({a}, {big}, {b}, {c}).value));
  EXPECT_TRUE(close(cross_ratio({a}, {b}, ExtComplex::inf(), {c}).value, cross_ratio({a}, {b}, {big}, {c}).value));
  EXPECT_TRUE(close(cross_ratio({a}, {b}, {c}, ExtComplex::inf()).value, cross_ratio({a}, {b}, {c}, {big}).value));
}

TEST(Ellmod, Errors) {
  EXPECT_EQ(code_of([] { agm_K(1.0); }), errc::singular_modulus);
  EXPECT_EQ(code_of([] { lambda_section_t({0.0}); }), errc::singular_modulus);
  EXPECT_EQ(code_of([] { lambda_section_t({1.0}); }), errc::singular_modulus);
  EXPECT_EQ(code_of([] { lambda_theta({cplx(0.0, -1.0)}); }), errc::not_in_upper_half_plane);
  EXPECT_EQ(code_of([] { lambda_theta({cplx(0.0, 0.01)}); }), errc::too_close_to_boundary);
  EXPECT_EQ(code_of([] { cross_ratio({1.0}, {1.0}, {2.0}, {3.0}); }), errc::degenerate_points);
  EXPECT_EQ(code_of([] { cross_ratio(ExtComplex::inf(), ExtComplex::inf(), {2.0}, {3.0}); }), errc::degenerate_points);
}

TEST(Ellmod, ParsesNumbers) {
  auto near = [](std::string_view s, cplx want) {
    auto v = parse_number(s);
    EXPECT_FALSE(v.infinite) << s;
    EXPECT_NEAR(std::abs(v.z - want), 0.0, 1e-12) << s;
  };
  near("15*sqrt(3)-26", 15 * std::sqrt(3.0) - 26);
  near("1+2i", cplx(1, 2));
  near("-0.5", -0.5);
  near("zeta3", zeta3);
  near("zeta6^5", zeta6_5);
  near("pi/2", std::numbers::pi / 2);
  near("(1+i)*(1-i)", 2.0);
  near("2^-1", 0.5);
  EXPECT_TRUE(parse_number("inf").infinite);
  EXPECT_EQ(code_of([] { parse_number("1+"); }), errc::invalid_input);
  EXPECT_EQ(code_of([] { parse_number("foo"); }), errc::invalid_input);
  EXPECT_EQ(code_of([] { parse_number("(1"); }), errc::invalid_input);
}

TEST(Ellmod, FormatsComplexNumbers) {
  EXPECT_EQ(format_complex(cplx(1, 2.143182698915)), "1+2.143182698915i");
  EXPECT_EQ(format_complex(cplx(0.5, 0)), "0.5");
  EXPECT_EQ(format_complex(cplx(0, -1)), "-1i");
  EXPECT_EQ(format_complex(cplx(-0.0, 0)), "0");
  EXPECT_EQ(format_complex(cplx(2, -0.25), 3), "2-0.25i");
}
