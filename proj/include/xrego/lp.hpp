#pragma once

#include "xrego/embedcore.hpp"

namespace xrego {

struct LpResult {
    Vector x;
    double value;
    int iterations;
};

// maximize c^T x subject to G x <= h, starting from a feasible x0.
// Primal active-set method: follow the projected objective until a
// constraint blocks, drop constraints with negative multipliers at
// stationary points. Ties are broken by lowest constraint index.
LpResult lp_maximize(const Matrix& G, const Vector& h, const Vector& c, const Vector& x0);

}  // namespace xrego
