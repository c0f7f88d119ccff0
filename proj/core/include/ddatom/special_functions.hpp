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

#ifndef DDATOM_SPECIAL_FUNCTIONS_HPP
#define DDATOM_SPECIAL_FUNCTIONS_HPP

namespace ddatom {

// Arguments of the Gamma function that occur in D-dimensional geometry are
// integers and half-integers only, so Gamma is evaluated by the exact
// recurrence Gamma(x+1) = x Gamma(x) from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).
// HalfInteger stores 2x to keep the argument exact.
struct HalfInteger {
  int twice_value;  // the number 2x; must be >= 1

  static HalfInteger from_twice(int twice);
  static HalfInteger from_int(int n);

  double value() const { return 0.5 * twice_value; }
};

double gamma_half_integer(HalfInteger x);

// Surface area of the unit (D-1)-sphere, S_{D-1} = 2 pi^{D/2} / Gamma(D/2).
// S_0 = 2 (two endpoints of an interval), S_1 = 2 pi, S_2 = 4 pi.
double sphere_surface_area(int dimension);

// Ai(x) switches from the Maclaurin series to the standard large-argument
// asymptotic expansion at this |x|. Both branches are accurate to well below
// 1e-9 at the switch point; a regression test straddles it.
inline constexpr double kAiryAsymptoticSwitch = 6.0;

double airy_ai(double x);

// n-th negative zero of Ai (1-based, n in [1, 10]), located by a sign-change
// scan plus bisection on airy_ai. Absolute accuracy better than 1e-9.
double airy_negative_zero(int n);

}  // namespace ddatom

#endif  // DDATOM_SPECIAL_FUNCTIONS_HPP
