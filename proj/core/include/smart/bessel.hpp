// Copyright 2026 The SMART Protocol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace smart {

// J0 from its ascending series, evaluated in long double. Cancellation keeps
// the error below 1e-14 for |x| < 12 and ~1e-8 at the |x| = 30 limit.
double bessel_j0(double x);

// i-th positive zero of J0 (i >= 1), found by bracketing and bisection.
// Zeros are computed once and cached.
double bessel_j0_zero(int i);

inline constexpr int kMaxBesselZeroIndex = 9;

}  // namespace smart
