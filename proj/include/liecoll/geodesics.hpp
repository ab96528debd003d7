// Copyright 2026 The liecoll Authors
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

#include "liecoll/geometry.hpp"

namespace liecoll {

struct GeodesicSettings {
  double step = 1e-3;
  double log_tolerance = 1e-10;
  int max_newton_iterations = 50;
  /// Use the one-parameter-subgroup closed forms when the metric is bi-invariant.
  bool closed_form = true;

  void validate() const;
};

/// Body-frame geodesic acceleration: xi' = ad_dagger(xi, xi).
Vector euler_arnold_rhs(const Metric& metric, const Vector& xi);

struct GeodesicPoint {
  GroupElement g;
  Vector velocity;  // body frame
};

/// Follows the geodesic from g0 with body velocity v for time t.
GeodesicPoint integrate_geodesic(const Metric& metric, const GroupElement& g0, const Vector& v,
                                 double t, const GeodesicSettings& settings = {});

GroupElement riemannian_exp(const Metric& metric, const GroupElement& g0, const Vector& v,
                            double t, const GeodesicSettings& settings = {});

/**
 * @brief Body-frame initial velocity of the geodesic from g0 reaching g1 at time 1.
 *
 * Solved by damped Newton shooting seeded with the group logarithm of
 * g0^-1 g1. Throws kNoConvergence when shooting stalls (typically near the
 * cut locus) and kCutLocus when the seed itself is undefined.
 */
Vector riemannian_log(const Metric& metric, const GroupElement& g0, const GroupElement& g1,
                      const GeodesicSettings& settings = {});

double distance(const Metric& metric, const GroupElement& g0, const GroupElement& g1,
                const GeodesicSettings& settings = {});

}  // namespace liecoll
