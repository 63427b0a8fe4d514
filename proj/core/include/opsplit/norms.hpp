#pragma once

#include "opsplit/types.hpp"

namespace opsplit {

struct ErrorNorms {
    double l1 = 0.0;   // grid-averaged: (1/dim)·Σ|Δ_i|
    double max = 0.0;  // max_i |Δ_i|
};

/// Error of u_num against u_ana. The L1 norm is divided by the point count so
/// values are comparable across mesh resolutions.
ErrorNorms error_norms(const StateVec& u_num, const StateVec& u_ana);

}  // namespace opsplit
