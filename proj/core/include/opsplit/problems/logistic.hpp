#pragma once

#include "opsplit/flow.hpp"

namespace opsplit {

/// u′ = u − u² split as A(u) = u (flow e^h·u) and B(u) = −u² (flow u/(1+hu)).
/// Both sub-flows are exact closed forms; full_field is the logistic RHS.
SplitSystem logistic_split();

/// Closed-form solution u(t) = u0·e^t / (1 + u0·(e^t − 1)).
double logistic_solution(double u0, double t);

}  // namespace opsplit
