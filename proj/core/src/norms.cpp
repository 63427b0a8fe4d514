#include "opsplit/norms.hpp"

#include <cmath>

#include "opsplit/errors.hpp"

namespace opsplit {

ErrorNorms error_norms(const StateVec& u_num, const StateVec& u_ana) {
    if (u_num.size() != u_ana.size())
        throw DimensionError("error_norms: dims " + std::to_string(u_num.size()) + " vs " +
                             std::to_string(u_ana.size()));
    if (u_num.empty()) throw DimensionError("error_norms: empty state");
    ErrorNorms n;
    double sum = 0.0;
    for (std::size_t i = 0; i < u_num.size(); ++i) {
        double d = std::fabs(u_num[i] - u_ana[i]);
        sum += d;
        n.max = std::max(n.max, d);
    }
    n.l1 = sum / static_cast<double>(u_num.size());
    return n;
}

}  // namespace opsplit
