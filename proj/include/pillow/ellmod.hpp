#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "pillow/error.hpp"

namespace pillow::ellmod {

using cplx = std::complex<double>;

struct HalfPlanePoint {
  cplx tau;
};

struct CrossRatio {
  cplx value;
};

/// A point of the Riemann sphere.
struct ExtComplex {
  cplx z{};
  bool infinite = false;

  static ExtComplex inf() { return {cplx{}, true}; }
};

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Square root with nonnegative real part; on the imaginary axis, nonnegative imaginary part.
inline cplx principal_sqrt(cplx z) {
  if (z.imag() == 0.0) z = cplx(z.real(), 0.0);
  cplx r = std::sqrt(z);
  if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
  return r;
}

inline cplx agm(cplx a, cplx b) {
  for (int it = 0; it < 64; ++it) {
    if (std::abs(a - b) <= 1e-16 * std::abs(a)) return a;
    cplx an = 0.5 * (a + b);
    b = principal_sqrt(a * b);
    a = an;
  }
  if (std::abs(a - b) <= 1e-15 * std::abs(a)) return a;
  fail(errc::no_convergence, "AGM did not converge in 64 iterations");
}

/// K(k) = pi / (2 AGM(1, sqrt(1 - k^2))).
inline cplx agm_K(cplx k) {
  if (!finite(k)) fail(errc::invalid_input, "modulus is not finite");
  cplx kp2 = 1.0 - k * k;
  if (kp2 == cplx(0.0, 0.0)) fail(errc::singular_modulus, "K is singular at k^2 = 1");
  cplx m = agm(cplx(1.0, 0.0), principal_sqrt(kp2));
  cplx r = std::numbers::pi / (2.0 * m);
  if (!finite(r)) fail(errc::no_convergence, "K is not finite");
  return r;
}

/// tau = i K(sqrt(1 - x)) / K(sqrt(x)).
inline HalfPlanePoint lambda_section_t(CrossRatio x) {
  if (x.value == cplx(0.0, 0.0) || x.value == cplx(1.0, 0.0))
    fail(errc::singular_modulus, "cross-ratio must avoid 0 and 1");
  cplx num = agm_K(principal_sqrt(1.0 - x.value));
  cplx den = agm_K(principal_sqrt(x.value));
  cplx tau = cplx(0.0, 1.0) * num / den;
  if (!finite(tau) || !(tau.imag() > 0.0)) fail(errc::not_in_upper_half_plane, "t(x) left the upper half plane");
  return {tau};
}

namespace detail {

/// theta_2^4 / theta_3^4 by q-series, for tau already in the fundamental domain.
inline cplx lambda_series(cplx tau) {
  cplx q = std::exp(cplx(0.0, std::numbers::pi) * tau);
  cplx s2(0.0, 0.0), s3(1.0, 0.0);
  for (int n = 0; n < 400; ++n) {
    cplx term = std::pow(q, n * (n + 1));
    s2 += term;
    if (std::abs(term) < 1e-18) break;
  }
  for (int n = 1; n < 400; ++n) {
    cplx term = 2.0 * std::pow(q, n * n);
    s3 += term;
    if (std::abs(term) < 1e-18) break;
  }
  cplx s2sq = s2 * s2, s3sq = s3 * s3;
  return 16.0 * q * (s2sq * s2sq) / (s3sq * s3sq);
}

}  // namespace detail

/**
 * lambda(tau) = theta_2^4 / theta_3^4.
 *
 * tau is first reduced to the standard fundamental domain and the value is
 * carried back with lambda(tau + 1) = lambda / (lambda - 1) and
 * lambda(-1 / tau) = 1 - lambda.
 */
inline cplx lambda_theta(HalfPlanePoint p) {
  cplx tau = p.tau;
  if (!finite(tau) || tau.imag() <= 0.0) fail(errc::not_in_upper_half_plane, "tau must have positive imaginary part");
  if (tau.imag() < 0.05) fail(errc::too_close_to_boundary, "Im tau below 0.05");
  std::vector<char> ops;
  for (int it = 0; it < 10000; ++it) {
    double n = std::round(tau.real());
    if (n != 0.0) {
      tau -= n;
      for (long long k = 0; k < static_cast<long long>(std::abs(n)); ++k) ops.push_back('T');
    }
    if (std::norm(tau) < 1.0 - 1e-15) {
      tau = -1.0 / tau;
      ops.push_back('S');
    } else {
      break;
    }
  }
  cplx lam = detail::lambda_series(tau);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) lam = *it == 'T' ? lam / (lam - 1.0) : 1.0 - lam;
  if (!finite(lam)) fail(errc::no_convergence, "lambda is not finite");
  return lam;
}

/// ((z1 - z3)(z2 - z4)) / ((z2 - z3)(z1 - z4)), with the usual limits at infinity.
inline CrossRatio cross_ratio(ExtComplex z1, ExtComplex z2, ExtComplex z3, ExtComplex z4) {
  std::array<ExtComplex, 4> z{z1, z2, z3, z4};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      bool same = z[i].infinite && z[j].infinite;
      if (!z[i].infinite && !z[j].infinite) {
        double scale = std::max({1.0, std::abs(z[i].z), std::abs(z[j].z)});
        same = std::abs(z[i].z - z[j].z) <= 1e-14 * scale;
      }
      if (same) fail(errc::degenerate_points, "cross-ratio points must be pairwise distinct");
    }
  cplx v;
  if (z1.infinite)
    v = (z2.z - z4.z) / (z2.z - z3.z);
  else if (z2.infinite)
    v = (z1.z - z3.z) / (z1.z - z4.z);
  else if (z3.infinite)
    v = (z2.z - z4.z) / (z1.z - z4.z);
  else if (z4.infinite)
    v = (z1.z - z3.z) / (z2.z - z3.z);
  else
    v = ((z1.z - z3.z) * (z2.z - z4.z)) / ((z2.z - z3.z) * (z1.z - z4.z));
  return {v};
}

inline std::array<cplx, 6> anharmonic_orbit(cplx x) {
  return {x, 1.0 / x, 1.0 - x, 1.0 / (1.0 - x), x / (x - 1.0), (x - 1.0) / x};
}

inline bool lambda_orbit_equal(CrossRatio x, CrossRatio y, double tol) {
  for (cplx o : anharmonic_orbit(x.value))
    if (std::abs(o - y.value) <= tol) return true;
  return false;
}

namespace detail {

class NumberParser {
 public:
  explicit NumberParser(std::string_view s) : s_(s) {}

  ExtComplex parse() {
    skip();
    if (s_.substr(pos_) == "inf" || s_.substr(pos_) == "infinity") return ExtComplex::inf();
    cplx v = expr();
    skip();
    if (pos_ != s_.size()) error("trailing characters");
    if (!finite(v)) error("value is not finite");
    return {v, false};
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(errc::invalid_input, "cannot parse number '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) != w) return false;
    std::size_t end = pos_ + w.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }

  cplx expr() {
    cplx v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  cplx term() {
    cplx v = unary();
    for (;;) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }
  cplx unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  cplx power() {
    cplx b = primary();
    if (!eat('^')) return b;
    cplx e = unary();
    if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) <= 64) {
      auto n = static_cast<long long>(e.real());
      cplx r(1.0, 0.0), base = n < 0 ? 1.0 / b : b;
      for (long long k = 0; k < std::abs(n); ++k) r *= base;
      return r;
    }
    return std::pow(b, e);
  }
  cplx primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    if (eat('(')) {
      cplx v = expr();
      if (!eat(')')) error("missing ')'");
      return v;
    }
    if (eat_word("sqrt")) {
      if (!eat('(')) error("sqrt needs '('");
      cplx v = expr();
      if (!eat(')')) error("missing ')'");
      return principal_sqrt(v);
    }
    if (eat_word("zeta3")) return std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    if (eat_word("zeta6")) return std::polar(1.0, std::numbers::pi / 3.0);
    if (eat_word("pi")) return {std::numbers::pi, 0.0};
    if (eat_word("i")) return {0.0, 1.0};
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      std::string text(s_.substr(start, pos_ - start));
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(text, &used);
      } catch (const std::exception&) {
        error("bad number");
      }
      if (used != text.size()) error("bad number");
      if (pos_ < s_.size() && s_[pos_] == 'i') {
        ++pos_;
        return {0.0, x};
      }
      return {x, 0.0};
    }
    error(std::string("unexpected '") + c + "'");
  }
};

}  // namespace detail

/// Accepts a+bi forms, inf, zeta3, zeta6, pi, sqrt(...), and + - * / ^.
inline ExtComplex parse_number(std::string_view text) { return detail::NumberParser(text).parse(); }

/// Fixed decimals with trailing zeros removed, e.g. "1+2.143182698915i".
inline std::string format_complex(cplx z, int decimals = 12) {
  auto fmt = [decimals](double x) {
    if (x == 0.0) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    std::string s = buf;
    if (s.find('.') != std::string::npos) {
      while (s.back() == '0') s.pop_back();
      if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
  };
  std::string re = fmt(z.real()), im = fmt(z.imag());
  if (im == "0") return re;
  std::string out = re == "0" ? "" : re;
  if (im[0] == '-')
    out += im;
  else if (!out.empty())
    out += "+" + im;
  else
    out += im;
  return out + "i";
}

}  // namespace pillow::ellmod
