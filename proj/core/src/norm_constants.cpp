// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/norm_constants.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "floqgap/errors.hpp"

namespace floqgap {

namespace {

double zeta_uncached(double s) {
  constexpr long kTerms = 1'000'000;
  // Kahan summation, smallest terms first, so the value is reproducible
  // and accurate to a few ulp.
  double sum = 0.0, comp = 0.0;
  for (long k = kTerms; k >= 1; --k) {
    const double term = std::pow(static_cast<double>(k), -s);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  // Euler-Maclaurin tail for sum_{k > kTerms} k^{-s}; the first omitted
  // correction is below 1e-14 for every s > 1 at this cutoff.
  const double a = static_cast<double>(kTerms) + 1.0;
  double tail = std::pow(a, 1.0 - s) / (s - 1.0);
  tail += 0.5 * std::pow(a, -s);
  tail += s / 12.0 * std::pow(a, -s - 1.0);
  tail -= s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(a, -s - 3.0);
  return sum + tail;
}

}  // namespace

double riemann_zeta(double s) {
  if (!(s > 1.0)) {
    throw ValidationError("floqgap::riemann_zeta: requires s > 1, got s = " + std::to_string(s));
  }
  static std::map<double, double> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  const double value = zeta_uncached(s);
  cache.emplace(s, value);
  return value;
}

double sh_constant(double p, double delta) {
  if (!std::isfinite(p) || p < 1.0 || delta < 0.0 || !(p + 2.0 * delta > 1.0)) {
    throw ValidationError("floqgap::sh_constant: requires finite p >= 1, delta >= 0, p + 2 delta > 1");
  }
  return 2.0 + 1.0 / (p + 2.0 * delta - 1.0) + riemann_zeta(p + 2.0 * delta);
}

double cp_constant(double p) {
  if (!(p > 2.0)) {
    throw ValidationError("floqgap::cp_constant: requires p > 2, got p = " + std::to_string(p));
  }
  return std::pow(2.0, p + 1.0) * (1.0 + 2.0 * riemann_zeta(p - 1.0));
}

}  // namespace floqgap
