// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace floqgap {

// Riemann zeta(s) for s > 1, by direct summation of 1e6 terms in fixed
// (descending) order plus an Euler-Maclaurin tail bound. Absolute error
// below 1e-14; results are cached, so repeated constant lookups are cheap.
double riemann_zeta(double s);

// Shur-Holmgren chain constant: ||A||_SH <= sh * ||A||_{p,delta} with
// sh = 2 + 1/(p + 2 delta - 1) + zeta(p + 2 delta). Requires finite p >= 1,
// delta >= 0 and p + 2 delta > 1.
double sh_constant(double p, double delta);

// Product-inequality constant C_p = 2^{p+1} (1 + 2 zeta(p-1)), p > 2.
double cp_constant(double p);

}  // namespace floqgap
