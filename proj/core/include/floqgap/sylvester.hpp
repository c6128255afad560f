// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "floqgap/block_operator.hpp"

namespace floqgap {

struct SylvesterOptions {
  double divisor_floor = 1e-10;  // hard floor on block spectral distances
  bool strict = true;            // enforce ||G||_{inf,gamma} <= c_H/6
};

struct SylvesterReport {
  double min_distance = 0.0;        // smallest block-pair spectral distance
  double min_distance_ratio = 0.0;  // min of dist / (c_H |m-n| / (2 max^{2g}))
  double max_solution_ratio = 0.0;  // max of ||W_mn|| dist / ((pi/2) ||V_mn||)
};

struct SylvesterSolution {
  BlockOperator W;
  SylvesterReport report;
};

// Off-diagonal solution of [H + G, W] = V, block pair by block pair:
//   (E_m + G_mm) W_mn - W_mn (E_n + G_nn) = V_mn.
// G must be diagonal Hermitian and V off-diagonal; each small equation is
// solved densely through its Kronecker vectorization.
SylvesterSolution sylvester_solve(const BlockOperator& G, const BlockOperator& V,
                                  const GapCertificate& cert, const SylvesterOptions& options = {});

}  // namespace floqgap
