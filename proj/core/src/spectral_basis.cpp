// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "floqgap/errors.hpp"

namespace floqgap {

SpectralBasis::SpectralBasis(std::vector<double> eigenvalues, std::vector<int> multiplicities,
                             double alpha)
    : eigenvalues_(std::move(eigenvalues)),
      multiplicities_(std::move(multiplicities)),
      alpha_(alpha),
      gamma_((1.0 - alpha) / 2.0) {
  // alpha = 1 (gamma = 0) is admitted for the bare gap scan with unweighted
  // distances; the theorems and model builders require alpha < 1.
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ValidationError("SpectralBasis: alpha must lie in (0,1], got " + std::to_string(alpha));
  }
  if (eigenvalues_.size() < 2) {
    throw ValidationError("SpectralBasis: need at least 2 blocks");
  }
  if (eigenvalues_.size() != multiplicities_.size()) {
    throw ValidationError("SpectralBasis: eigenvalue/multiplicity length mismatch");
  }
  if (!(eigenvalues_.front() > 0.0)) {
    throw ValidationError("SpectralBasis: E_1 must be strictly positive");
  }
  for (size_t i = 1; i < eigenvalues_.size(); ++i) {
    if (!(eigenvalues_[i - 1] < eigenvalues_[i])) {
      throw ValidationError("SpectralBasis: eigenvalues must be strictly increasing at index " +
                            std::to_string(i + 1));
    }
  }
  offsets_.reserve(multiplicities_.size() + 1);
  offsets_.push_back(0);
  for (int m : multiplicities_) {
    if (m < 1) throw ValidationError("SpectralBasis: multiplicities must be positive");
    offsets_.push_back(offsets_.back() + m);
  }
}

int SpectralBasis::block_of(int coordinate) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), coordinate);
  return static_cast<int>(it - offsets_.begin());
}

BasisPtr build_power_basis(double alpha, int blocks, MultiplicityRule rule) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("build_power_basis: alpha must lie in (0,1), got " + std::to_string(alpha));
  }
  if (blocks < 2) {
    throw ValidationError("build_power_basis: need at least 2 blocks");
  }
  std::vector<double> ev(static_cast<size_t>(blocks));
  std::vector<int> mult(static_cast<size_t>(blocks), 1);
  switch (rule) {
    case MultiplicityRule::simple:
      for (int n = 1; n <= blocks; ++n) {
        ev[static_cast<size_t>(n - 1)] = std::pow(static_cast<double>(n), alpha);
      }
      break;
    case MultiplicityRule::howland:
      // Circle-model spectrum shifted to keep E_1 > 0; block 1 is the
      // constant mode, every higher block a cosine pair.
      for (int n = 1; n <= blocks; ++n) {
        ev[static_cast<size_t>(n - 1)] = std::pow(static_cast<double>(n - 1), alpha) + 1.0;
        if (n > 1) mult[static_cast<size_t>(n - 1)] = 2;
      }
      break;
  }
  return std::make_shared<const SpectralBasis>(std::move(ev), std::move(mult), alpha);
}

GapCertificate certify_gaps(const SpectralBasis& basis) {
  const int N = basis.blocks();
  const double two_gamma = 2.0 * basis.gamma();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int m = 2; m <= N; ++m) {
    const double wm = std::pow(static_cast<double>(m), two_gamma);
    for (int n = 1; n < m; ++n) {
      const double diff = std::abs(basis.eigenvalue(m) - basis.eigenvalue(n));
      if (diff == 0.0) {
        throw ValidationError("certify_gaps: degenerate eigenvalue pair (" + std::to_string(n) +
                              "," + std::to_string(m) + ")");
      }
      const double ratio = diff * wm / static_cast<double>(m - n);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  return GapCertificate{lo, hi, N};
}

}  // namespace floqgap
