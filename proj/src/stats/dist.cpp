// Copyright 2026 The statsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stats/dist.hpp"

#include <cmath>
#include <limits>

#include "common/error.hpp"

namespace statsel::stats {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 500;

// Continued fraction for I_x(a,b), modified Lentz. Converges quickly for
// x < (a+1)/(a+b+2); the caller applies the symmetry split.
double beta_cont_frac(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  return h;
}

// Lower incomplete gamma by series, P(s,x) for x < s + 1.
double gamma_series(double s, double x) {
  double ap = s;
  double sum = 1.0 / s;
  double del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Upper incomplete gamma by continued fraction, Q(s,x) for x >= s + 1.
double gamma_cont_frac(double s, double x) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

double normal_pdf(double z) {
  static const double kInvSqrt2Pi = 0.3989422804014326779;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(Errc::domain_error, "reg_inc_beta requires a > 0 and b > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(Errc::domain_error, "reg_inc_beta requires x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cont_frac(a, b, x) / a;
  }
  return 1.0 - front * beta_cont_frac(b, a, 1.0 - x) / b;
}

double reg_inc_gamma_lower(double s, double x) {
  if (!(s > 0.0)) throw Error(Errc::domain_error, "reg_inc_gamma requires s > 0");
  if (x < 0.0) throw Error(Errc::domain_error, "reg_inc_gamma requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return gamma_series(s, x);
  return 1.0 - gamma_cont_frac(s, x);
}

double reg_inc_gamma_upper(double s, double x) {
  if (!(s > 0.0)) throw Error(Errc::domain_error, "reg_inc_gamma requires s > 0");
  if (x < 0.0) throw Error(Errc::domain_error, "reg_inc_gamma requires x >= 0");
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) return 1.0 - gamma_series(s, x);
  return gamma_cont_frac(s, x);
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

double normal_sf(double z) { return normal_cdf(-z); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(Errc::domain_error, "normal_quantile requires p in (0, 1)");
  }
  // Logit start, then safeguarded Newton on the CDF.
  double x = std::log(p / (1.0 - p)) * 0.5876;
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 100; ++i) {
    const double f = normal_cdf(x) - p;
    if (f > 0.0) hi = x; else lo = x;
    const double dfdx = normal_pdf(x);
    double step = (dfdx > 0.0) ? f / dfdx : 0.0;
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-15 * std::max(1.0, std::fabs(x))) return next;
    x = next;
  }
  return x;
}

double student_t_cdf(double t, double dof) {
  if (!(dof > 0.0)) throw Error(Errc::domain_error, "t CDF requires dof > 0");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = dof / (dof + t * t);
  const double half_tail = 0.5 * reg_inc_beta(0.5 * dof, 0.5, x);
  return (t >= 0.0) ? 1.0 - half_tail : half_tail;
}

double student_t_sf(double t, double dof) { return student_t_cdf(-t, dof); }

double student_t_quantile(double p, double dof) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(Errc::domain_error, "t quantile requires p in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  // Newton from the normal start with bisection safeguard.
  double x = normal_quantile(p);
  double lo = -1e308, hi = 1e308;
  const double ln_norm = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                         0.5 * std::log(dof * 3.14159265358979323846);
  for (int i = 0; i < 200; ++i) {
    const double f = student_t_cdf(x, dof) - p;
    if (f > 0.0) hi = x; else lo = x;
    const double pdf =
        std::exp(ln_norm - 0.5 * (dof + 1.0) * std::log1p(x * x / dof));
    double next = (pdf > 0.0) ? x - f / pdf : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) {
      const double blo = std::max(lo, -1e12), bhi = std::min(hi, 1e12);
      next = 0.5 * (blo + bhi);
    }
    if (std::fabs(next - x) <= 1e-14 * std::max(1.0, std::fabs(x))) return next;
    x = next;
  }
  return x;
}

double f_cdf(double x, double d1, double d2) {
  if (!(d1 > 0.0 && d2 > 0.0)) {
    throw Error(Errc::domain_error, "F CDF requires positive dof");
  }
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return reg_inc_beta(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2));
}

double f_sf(double x, double d1, double d2) {
  if (!(d1 > 0.0 && d2 > 0.0)) {
    throw Error(Errc::domain_error, "F CDF requires positive dof");
  }
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return reg_inc_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * x));
}

double chi_square_cdf(double x, double dof) {
  if (!(dof > 0.0)) throw Error(Errc::domain_error, "chi-square CDF requires dof > 0");
  if (x <= 0.0) return 0.0;
  return reg_inc_gamma_lower(0.5 * dof, 0.5 * x);
}

double chi_square_sf(double x, double dof) {
  if (!(dof > 0.0)) throw Error(Errc::domain_error, "chi-square CDF requires dof > 0");
  if (x <= 0.0) return 1.0;
  return reg_inc_gamma_upper(0.5 * dof, 0.5 * x);
}

}  // namespace statsel::stats
