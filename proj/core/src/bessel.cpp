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

#include "smart/bessel.hpp"

#include <array>
#include <cmath>
#include <string>

#include "smart/errors.hpp"

namespace smart {

double bessel_j0(double x) {
  if (std::abs(x) > 30.0) {
    throw DomainError("bessel_j0: series evaluation limited to |x| <= 30");
  }
  // J0(x) = sum_k (-1)^k (x^2/4)^k / (k!)^2
  const long double q = 0.25L * static_cast<long double>(x) * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum) && static_cast<long double>(k) > q) break;
  }
  return static_cast<double>(sum);
}

namespace {

double bisect_zero(double lo, double hi) {
  double flo = bessel_j0(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = bessel_j0(mid);
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::array<double, kMaxBesselZeroIndex> compute_zeros() {
  std::array<double, kMaxBesselZeroIndex> zeros{};
  // Consecutive zeros are ~pi apart; a 0.05 scan never skips one.
  constexpr double kScanStep = 0.05;
  int found = 0;
  double x = kScanStep;
  double fx = bessel_j0(x);
  while (found < kMaxBesselZeroIndex) {
    const double next = x + kScanStep;
    const double fnext = bessel_j0(next);
    if ((fx < 0.0) != (fnext < 0.0)) {
      zeros[found++] = bisect_zero(x, next);
    }
    x = next;
    fx = fnext;
  }
  return zeros;
}

}  // namespace

double bessel_j0_zero(int i) {
  if (i < 1) {
    throw DomainError("Bessel root index must be >= 1, got " + std::to_string(i));
  }
  if (i > kMaxBesselZeroIndex) {
    throw DomainError("Bessel root index " + std::to_string(i) + " beyond supported " +
                      std::to_string(kMaxBesselZeroIndex));
  }
  static const auto zeros = compute_zeros();
  return zeros[i - 1];
}

}  // namespace smart
