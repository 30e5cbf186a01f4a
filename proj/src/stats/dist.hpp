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

#ifndef STATSEL_STATS_DIST_HPP
#define STATSEL_STATS_DIST_HPP

// Distribution substrate: regularized incomplete beta/gamma and the CDFs
// built on them. Everything here is deterministic and pure.
//
// Conventions:
//   reg_inc_beta(a, b, x)        I_x(a, b)
//   reg_inc_gamma_lower(s, x)    P(s, x) = gamma(s, x) / Gamma(s)
//   chi_square_cdf(x, k)         P(k/2, x/2)
//   student_t_cdf / f_cdf        defined as the usual incomplete-beta
//                                transforms; survival variants evaluate the
//                                tail directly so far-tail p-values keep
//                                full relative precision.

namespace statsel::stats {

double reg_inc_beta(double a, double b, double x);
double reg_inc_gamma_lower(double s, double x);
double reg_inc_gamma_upper(double s, double x);

double normal_cdf(double z);
double normal_sf(double z);
double normal_quantile(double p);

double student_t_cdf(double t, double dof);
double student_t_sf(double t, double dof);
double student_t_quantile(double p, double dof);

double f_cdf(double x, double d1, double d2);
double f_sf(double x, double d1, double d2);

double chi_square_cdf(double x, double dof);
double chi_square_sf(double x, double dof);

}  // namespace statsel::stats

#endif  // STATSEL_STATS_DIST_HPP
