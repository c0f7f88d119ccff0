// Copyright 2026 The ddatom Authors
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

#include "ddatom/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ddatom {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;  // sqrt(pi)
}  // namespace

HalfInteger HalfInteger::from_twice(int twice) {
  if (twice < 1) {
    throw std::invalid_argument("HalfInteger: 2x must be >= 1, got " +
                                std::to_string(twice));
  }
  return HalfInteger{twice};
}

HalfInteger HalfInteger::from_int(int n) { return from_twice(2 * n); }

double gamma_half_integer(HalfInteger x) {
  if (x.twice_value < 1) {
    throw std::invalid_argument("gamma_half_integer: argument must be >= 1/2");
  }
  // Walk down to Gamma(1) = 1 or Gamma(1/2) = sqrt(pi) by Gamma(x) =
  // (x-1) Gamma(x-1); both base cases and every factor are exact inputs.
  double result = (x.twice_value % 2 == 0) ? 1.0 : kSqrtPi;
  for (int t = x.twice_value; t > 2; t -= 2) {
    result *= 0.5 * (t - 2);
  }
  return result;
}

double sphere_surface_area(int dimension) {
  if (dimension < 1) {
    throw std::invalid_argument("sphere_surface_area: dimension must be >= 1");
  }
  const double half_d = 0.5 * dimension;
  return 2.0 * std::pow(std::numbers::pi, half_d) /
         gamma_half_integer(HalfInteger::from_twice(dimension));
}

namespace {

// Ai(0) and Ai'(0); the Maclaurin expansion is c1 f(x) + c2 g(x) with
// f'' = x f, f(0) = 1 and g'' = x g, g(0) = 0, g'(0) = 1.
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAiPrime0 = -0.25881940379280679841;

double airy_series(double x) {
  const double x3 = x * x * x;
  double f = 1.0, g = x;
  double tf = 1.0, tg = x;
  for (int k = 0; k < 80; ++k) {
    tf *= x3 / ((3 * k + 2) * (3 * k + 3));
    tg *= x3 / ((3 * k + 3) * (3 * k + 4));
    f += tf;
    g += tg;
    if (std::abs(tf) < 1e-18 * std::abs(f) &&
        std::abs(tg) < 1e-18 * std::max(std::abs(g), 1e-300)) {
      break;
    }
  }
  return kAi0 * f + kAiPrime0 * g;
}

// Oscillatory asymptotic form for large negative argument:
//   Ai(-z) = (cos(zeta - pi/4) P + sin(zeta - pi/4) Q) / (sqrt(pi) z^{1/4}),
// zeta = (2/3) z^{3/2}, P and Q the even/odd alternating sums of
// u_k / zeta^k with u_0 = 1, u_{k+1} = u_k (6k+1)(6k+5) / (72 (k+1)).
// The series is truncated at its smallest term.
double airy_asymptotic_negative(double x) {
  const double z = -x;
  const double zeta = (2.0 / 3.0) * z * std::sqrt(z);
  double p_sum = 0.0, q_sum = 0.0;
  double u = 1.0;
  double zeta_pow = 1.0;
  double prev_mag = 1e308;
  for (int k = 0; k < 22; ++k) {
    if (k > 0) {
      u *= static_cast<double>((6 * k - 5) * (6 * k - 1)) / (72.0 * k);
      zeta_pow *= zeta;
    }
    const double term = u / zeta_pow;
    if (std::abs(term) > prev_mag) break;  // divergent tail reached
    prev_mag = std::abs(term);
    const double sign = (k % 4 < 2) ? 1.0 : -1.0;  // pattern + + - -
    if (k % 2 == 0) {
      p_sum += sign * term;
    } else {
      q_sum += sign * term;
    }
  }
  const double phase = zeta - 0.25 * std::numbers::pi;
  return (std::cos(phase) * p_sum + std::sin(phase) * q_sum) /
         (kSqrtPi * std::pow(z, 0.25));
}

}  // namespace

double airy_ai(double x) {
  if (std::abs(x) <= kAiryAsymptoticSwitch) {
    return airy_series(x);
  }
  if (x < 0.0) {
    return airy_asymptotic_negative(x);
  }
  // Large positive argument: exponentially small. Nothing downstream needs
  // more than the leading asymptotic order here.
  const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
  double p_sum = 0.0;
  double u = 1.0, zeta_pow = 1.0, prev_mag = 1e308;
  for (int k = 0; k < 22; ++k) {
    if (k > 0) {
      u *= static_cast<double>((6 * k - 5) * (6 * k - 1)) / (72.0 * k);
      zeta_pow *= zeta;
    }
    const double term = (k % 2 == 0 ? 1.0 : -1.0) * u / zeta_pow;
    if (std::abs(term) > prev_mag) break;
    prev_mag = std::abs(term);
    p_sum += term;
  }
  return std::exp(-zeta) * p_sum /
         (2.0 * kSqrtPi * std::pow(x, 0.25));
}

double airy_negative_zero(int n) {
  if (n < 1 || n > 10) {
    throw std::invalid_argument("airy_negative_zero: n must be in [1, 10]");
  }
  // All ten zeros are found once by a fixed scan + bisection and cached; the
  // scan step 0.05 is far below the minimal zero spacing (~0.89).
  static const std::array<double, 10> zeros = [] {
    std::array<double, 10> found{};
    int count = 0;
    double x_hi = -0.5;
    double ai_hi = airy_ai(x_hi);
    while (count < 10) {
      const double x_lo = x_hi - 0.05;
      const double ai_lo = airy_ai(x_lo);
      if ((ai_lo < 0.0) != (ai_hi < 0.0)) {
        double a = x_lo, b = x_hi;
        bool a_neg = ai_lo < 0.0;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (a + b);
          if ((airy_ai(mid) < 0.0) == a_neg) {
            a = mid;
          } else {
            b = mid;
          }
        }
        found[count++] = 0.5 * (a + b);
      }
      x_hi = x_lo;
      ai_hi = ai_lo;
    }
    return found;
  }();
  return zeros[n - 1];
}

}  // namespace ddatom
