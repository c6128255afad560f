// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

namespace floqgap {

// Eigenvalue blocks E_1 < E_2 < ... < E_N of a positive operator H with
// multiplicities dim(Ran P_n). Blocks are numbered from 1; degenerate
// eigenvalues are encoded through multiplicities, never by repetition.
// Immutable after construction.
class SpectralBasis {
public:
  SpectralBasis(std::vector<double> eigenvalues, std::vector<int> multiplicities, double alpha);

  int blocks() const { return static_cast<int>(eigenvalues_.size()); }
  int dim() const { return offsets_.back(); }

  // n in 1..blocks().
  double eigenvalue(int n) const { return eigenvalues_[static_cast<size_t>(n - 1)]; }
  int multiplicity(int n) const { return multiplicities_[static_cast<size_t>(n - 1)]; }
  int offset(int n) const { return offsets_[static_cast<size_t>(n - 1)]; }

  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }

  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }

  // Block index (1-based) owning a concrete coordinate.
  int block_of(int coordinate) const;

private:
  std::vector<double> eigenvalues_;
  std::vector<int> multiplicities_;
  std::vector<int> offsets_;  // prefix sums, size blocks()+1
  double alpha_;
  double gamma_;
};

using BasisPtr = std::shared_ptr<const SpectralBasis>;

enum class MultiplicityRule { simple, howland };

// E_n = n^alpha with unit multiplicities (simple), or the circle-model
// layout E_n = (n-1)^alpha + 1 with multiplicities 1,2,2,... (howland).
BasisPtr build_power_basis(double alpha, int blocks, MultiplicityRule rule = MultiplicityRule::simple);

// Tightest constants of the two-sided gap condition
//   c_H |m-n| / max{m,n}^{2 gamma} <= |E_m - E_n| <= C_H |m-n| / max{m,n}^{2 gamma}
// over all scanned pairs.
struct GapCertificate {
  double c_H = 0.0;
  double C_H = 0.0;
  int verified_up_to = 0;
};

GapCertificate certify_gaps(const SpectralBasis& basis);

}  // namespace floqgap
