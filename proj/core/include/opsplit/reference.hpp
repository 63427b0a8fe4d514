#pragma once

#include "opsplit/flow.hpp"

namespace opsplit {

/// High-accuracy oracle for the exact evolution: adaptive order-5(4) march of
/// the field over [t0, t0+h] with abs and rel tolerance both set to tol.
StateVec reference_flow(const VectorField& field, double t0, double h, const StateVec& c,
                        double tol);

/// Same for a split system, integrating full_field (or A+B when absent).
StateVec reference_flow(const SplitSystem& sys, double t0, double h, const StateVec& c,
                        double tol);

}  // namespace opsplit
