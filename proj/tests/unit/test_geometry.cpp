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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "smart/bessel.hpp"
#include "smart/errors.hpp"
#include "smart/geometry.hpp"
#include "smart/model.hpp"

namespace smart {
namespace {

const double kFmod = optimal_mod_frequency(1.0);
const double kTmod = 1.0 / kFmod;

Waveform smart_sine(double omega_r = 1.0) {
  return smart_envelope(omega_r, kFmod, ModulationVariant::sine);
}

// Bisection on the standard-library J0, independent of the series in bessel.cpp.
double std_j0_zero(double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::cyl_bessel_j(0.0, lo) * std::cyl_bessel_j(0.0, mid) <= 0.0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(Geometry, BesselZeros) {
  for (double x : {0.0, 0.7, 2.4, 5.5, 9.3, 11.9}) {
    EXPECT_NEAR(bessel_j0(x), std::cyl_bessel_j(0.0, x), 1e-12) << x;
  }
  EXPECT_NEAR(bessel_j0_zero(1), 2.404826, 1e-6);
  EXPECT_NEAR(bessel_j0_zero(2), std_j0_zero(5.0, 6.0), 1e-9);
  EXPECT_NEAR(bessel_j0_zero(2), 5.520078, 1e-6);
}

TEST(Geometry, OptimalModFrequency) {
  EXPECT_NEAR(optimal_mod_frequency(1.0), 0.588074, 1e-6);
  EXPECT_NEAR(optimal_mod_frequency(2.0), 2.0 * optimal_mod_frequency(1.0), 1e-12);
  EXPECT_NEAR(optimal_mod_frequency(1.0, 2), std::sqrt(2.0) / std_j0_zero(5.0, 6.0), 1e-9);
  EXPECT_THROW(optimal_mod_frequency(1.0, 0), DomainError);
}

TEST(Geometry, FirstOrderExamples) {
  EXPECT_LT(magnus_first_order(smart_sine(), NoiseAxis::x, kTmod).norm(), 1e-6);
  EXPECT_LT(magnus_first_order(dressed_envelope(1.0), NoiseAxis::x, 1.0).norm(), 1e-6);
  const Vector3 idle = magnus_first_order(Waveform(), NoiseAxis::x, 2.5);
  EXPECT_NEAR(idle[0], 2.5, 1e-12);
  EXPECT_NEAR(idle[1], 0.0, 1e-12);
  EXPECT_NEAR(idle[2], 0.0, 1e-12);
  // sigma_z noise commutes with the drive and accumulates linearly.
  EXPECT_NEAR(magnus_first_order(smart_sine(), NoiseAxis::z, kTmod)[2], kTmod, 1e-12);
}

TEST(Geometry, FirstOrderVanishesAtHalfPeriods) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_LT(magnus_first_order(smart_sine(), NoiseAxis::x, n * kTmod / 2).norm(), 1e-6) << n;
  }
  EXPECT_GT(magnus_first_order(smart_sine(), NoiseAxis::x, 0.3 * kTmod).norm(), 1e-2);
}

TEST(Geometry, SpaceCurveClosureMatchesFirstOrder) {
  for (double scale : {1.0, 1.1, 0.8}) {
    const Waveform env = smart_envelope(scale, kFmod, ModulationVariant::sine);
    const SpaceCurve c = space_curve(env, kTmod, 2001);
    const Vector3 a1 = magnus_first_order(env, NoiseAxis::x, kTmod);
    EXPECT_NEAR(c.closure_defect(), a1.norm(), 1e-9) << scale;
  }
}

TEST(Geometry, SmartFigureEightCancelsSecondOrder) {
  const MagnusReport r = magnus_report(smart_sine(), NoiseAxis::x, kTmod);
  EXPECT_LT(r.closure_defect, 1e-4);
  EXPECT_LT(r.projected_areas.max_abs(), 1e-4);
  // Two lobes: the curve crosses its start point again at half period.
  const SpaceCurve c = space_curve(smart_sine(), kTmod, 2001);
  EXPECT_LT(c.point(1000).norm(), 1e-6);
  EXPECT_GT(c.point(500).norm(), 0.1);
}

TEST(Geometry, DressedCircleKeepsArea) {
  const MagnusReport r = magnus_report(dressed_envelope(1.0), NoiseAxis::x, 1.0);
  EXPECT_LT(r.closure_defect, 1e-4);
  EXPECT_GT(r.projected_areas.max_abs(), 0.01);
  // A circle of circumference T: area pi r^2 with r = T / (2 pi).
  EXPECT_NEAR(std::abs(r.projected_areas.xy), 1.0 / (4 * kPi), 1e-5);
}

TEST(Geometry, OffsetAmplitudeBreaksClosure) {
  const Waveform off = smart_envelope(1.1, kFmod, ModulationVariant::sine);
  EXPECT_GT(magnus_report(off, NoiseAxis::x, kTmod).closure_defect, 1e-3);
}

TEST(Geometry, ArcLengthAndCurvature) {
  const Waveform env = smart_sine();
  const SpaceCurve c = space_curve(env, kTmod, 4001);
  const std::vector<double> kappa = curvature(c);
  for (std::size_t i = 1; i + 1 < c.samples.size(); ++i) {
    const double dt = c.samples[i + 1].t - c.samples[i - 1].t;
    const double speed = (c.point(i + 1) - c.point(i - 1)).norm() / dt;
    ASSERT_NEAR(speed, 1.0, 1e-3) << i;
    const double omega = env(c.samples[i].t);
    if (std::abs(omega) > 0.2) {
      ASSERT_NEAR(kappa[i] / (kTwoPi * std::abs(omega)), 1.0, 0.01) << i;
    }
  }
  EXPECT_EQ(c.samples.front().x, 0.0);
}

// Second order from the double integral of toggling-frame cross products,
// using the analytic toggling vector (cos phi, -sin phi, 0).
double second_order_oracle(const Waveform& env, double total, int n) {
  const double h = total / n;
  auto tangent = [&](double t) {
    const double phi = kTwoPi * env.integral(t);
    return Vector3(std::cos(phi), -std::sin(phi), 0.0);
  };
  Vector3 s = Vector3::Zero();
  Vector3 d = Vector3::Zero();
  Vector3 prev = tangent(0.0);
  for (int k = 1; k <= n; ++k) {
    const Vector3 cur = tangent(k * h);
    const Vector3 s_next = s + 0.5 * h * (prev + cur);
    d += 0.5 * h * (prev.cross(s) + cur.cross(s_next));
    s = s_next;
    prev = cur;
  }
  return d.norm();
}

TEST(Geometry, ProjectedAreasAgreeWithDoubleIntegral) {
  for (double scale : {1.0, 1.1}) {
    const Waveform env = smart_envelope(scale, kFmod, ModulationVariant::sine);
    const MagnusReport r = magnus_report(env, NoiseAxis::x, kTmod);
    const double oracle = second_order_oracle(env, kTmod, 200000);
    // Areas are only meaningful for closed curves; for the open one compare loosely.
    EXPECT_NEAR(r.a2_norm, oracle, scale == 1.0 ? 1e-5 : 0.05 * oracle + 1e-3) << scale;
  }
  const MagnusReport circle = magnus_report(dressed_envelope(1.0), NoiseAxis::x, 1.0);
  const double oracle = second_order_oracle(dressed_envelope(1.0), 1.0, 200000);
  EXPECT_NEAR(circle.a2_norm, oracle, 1e-5 * oracle);
}

TEST(Geometry, DegenerateCurveHasNoArea) {
  SpaceCurve c;
  c.samples.push_back({0.0, 0.0, 0.0, 0.0});
  const ProjectedAreas a = projected_areas(c);
  EXPECT_EQ(a.xy, 0.0);
  EXPECT_EQ(a.xz, 0.0);
  EXPECT_EQ(a.yz, 0.0);
  EXPECT_THROW(space_curve(smart_sine(), kTmod, 50), DomainError);
}

TEST(Geometry, FilterFunctionShapes) {
  std::vector<double> freqs;
  for (int i = 0; i <= 300; ++i) freqs.push_back(0.01 * i);
  const std::vector<double> dressed = filter_function(dressed_envelope(1.0), freqs, 10.0);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < dressed.size(); ++i) {
    if (dressed[i] > dressed[peak]) peak = i;
  }
  EXPECT_NEAR(freqs[peak], 1.0, 0.05);

  const std::vector<double> probe = {1e-4, kFmod, 2 * kFmod};
  const std::vector<double> s = filter_function(smart_sine(), probe, 7 * kTmod);
  EXPECT_LT(s[0], 1e-3);
  EXPECT_GE(s[1], 10.0 * s[0]);
  EXPECT_GE(s[2], 10.0 * s[0]);
}

TEST(Geometry, PeakRockingAngle) {
  const double peak = peak_rotation_angle(smart_sine(), kTmod);
  EXPECT_NEAR(peak, 2.0 * bessel_j0_zero(1), 1e-6);
  EXPECT_NEAR(peak / kPi, 1.531, 1e-3);
}

}  // namespace
}  // namespace smart
