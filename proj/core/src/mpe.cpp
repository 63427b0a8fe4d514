#include "opsplit/mpe.hpp"

#include <algorithm>
#include <cmath>

#include "dense_lu.hpp"
#include "opsplit/errors.hpp"
#include "rational.hpp"

namespace opsplit {

using detail::Rational;

KSequence KSequence::checked(std::vector<int> k) {
    if (k.empty()) throw ConfigError("KSequence: empty k-list");
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] < 1)
            throw ConfigError("KSequence: k must be positive, got " + std::to_string(k[i]));
        if (i > 0 && k[i] <= k[i - 1])
            throw ConfigError("KSequence: k-list must be strictly increasing (" +
                              std::to_string(k[i - 1]) + " then " + std::to_string(k[i]) + ")");
    }
    KSequence s;
    s.k = std::move(k);
    return s;
}

KSequence KSequence::natural(int n) {
    if (n < 1) throw ConfigError("KSequence::natural: n must be >= 1");
    std::vector<int> k(n);
    for (int i = 0; i < n; ++i) k[i] = i + 1;
    return checked(std::move(k));
}

namespace {

void validate_weights(const MpeWeights& w) {
    const auto& k = w.k_source.k;
    const std::size_t n = k.size();
    double sum = 0.0;
    for (double c : w.values) sum += c;
    if (std::fabs(sum - 1.0) > 1e-12)
        throw EvaluationError("mpe_weights: weight sum " + std::to_string(sum) + " violates 1");
    for (std::size_t m = 1; m < n; ++m) {
        double moment = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            moment += w.values[i] * std::pow(static_cast<double>(k[i]), -2.0 * m);
        if (std::fabs(moment) > 1e-10)
            throw EvaluationError("mpe_weights: moment m=" + std::to_string(m) + " is " +
                                  std::to_string(moment) + ", should vanish");
    }
}

MpeWeights weights_rational(const KSequence& seq, WeightMode mode) {
    const auto& k = seq.k;
    const std::size_t n = k.size();
    std::vector<Rational> c;

    if (mode == WeightMode::closed_form) {
        for (std::size_t i = 0; i < n; ++i) {
            Rational ci(1);
            Rational ki2(static_cast<long long>(k[i]) * k[i]);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                Rational kj2(static_cast<long long>(k[j]) * k[j]);
                ci = ci * (ki2 / (ki2 - kj2));
            }
            c.push_back(ci);
        }
    } else {
        // Moment system rows m = 0..n−1: Σ_i c_i·k_i^{−2m} = δ_{m0}.
        std::vector<Rational> a(n * n), b(n);
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t i = 0; i < n; ++i) {
                detail::BigInt p = 1;
                for (std::size_t r = 0; r < m; ++r) p *= static_cast<long long>(k[i]) * k[i];
                a[m * n + i] = Rational(1, p);
            }
            b[m] = Rational(m == 0 ? 1 : 0);
        }
        c = detail::rational_solve(std::move(a), std::move(b), n);
    }

    MpeWeights w;
    w.k_source = seq;
    for (const Rational& ci : c) {
        w.values.push_back(ci.to_double());
        w.fractions.push_back(ci.to_string());
    }
    return w;
}

MpeWeights weights_double(const KSequence& seq, WeightMode mode) {
    const auto& k = seq.k;
    const std::size_t n = k.size();
    MpeWeights w;
    w.k_source = seq;

    if (mode == WeightMode::closed_form) {
        for (std::size_t i = 0; i < n; ++i) {
            double ci = 1.0;
            double ki2 = static_cast<double>(k[i]) * k[i];
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                double kj2 = static_cast<double>(k[j]) * k[j];
                ci *= ki2 / (ki2 - kj2);
            }
            w.values.push_back(ci);
        }
    } else {
        std::vector<double> a(n * n), b(n, 0.0);
        b[0] = 1.0;
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t i = 0; i < n; ++i)
                a[m * n + i] = std::pow(static_cast<double>(k[i]), -2.0 * static_cast<double>(m));
        w.values = detail::lu_solve(std::move(a), std::move(b), n);
    }
    return w;
}

}  // namespace

MpeWeights mpe_weights(const KSequence& k, WeightMode mode) {
    const bool exact = std::all_of(k.k.begin(), k.k.end(), [](int v) { return v <= 100; });
    MpeWeights w = exact ? weights_rational(k, mode) : weights_double(k, mode);
    validate_weights(w);
    return w;
}

MpeScheme make_mpe_scheme(const SplitSystem& sys, const KSequence& k, StrangOrder kernel_order,
                          WeightMode mode) {
    MpeScheme scheme;
    scheme.weights = mpe_weights(k, mode);
    scheme.kernel = [sys, kernel_order](double t, double h, const StateVec& c) {
        return strang_step(sys, t, h, c, kernel_order);
    };
    return scheme;
}

StateVec t2_power(const MpeScheme& scheme, int k, double t, double h, const StateVec& c) {
    if (k < 1) throw ConfigError("t2_power: k must be >= 1, got " + std::to_string(k));
    const double sub = h / k;
    StateVec state = c;
    for (int i = 0; i < k; ++i) {
        try {
            state = scheme.kernel(t + i * sub, sub, state);
        } catch (const Error& e) {
            throw FlowError("t2_power: kernel failed at substep " + std::to_string(i + 1) + "/" +
                            std::to_string(k) + ": " + e.what());
        }
    }
    return state;
}

StateVec mpe_step(const MpeScheme& scheme, double t, double h, const StateVec& c) {
    const auto& k = scheme.weights.k_source.k;
    StateVec acc(c.size(), 0.0);
    for (std::size_t i = 0; i < k.size(); ++i) {
        StateVec term = t2_power(scheme, k[i], t, h, c);
        axpy(scheme.weights.values[i], term, acc);
    }
    return acc;
}

std::vector<int> parse_k_list(std::string_view text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - pos);
        // trim spaces
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (tok.empty()) throw ConfigError("parse_k_list: empty entry in '" + std::string(text) + "'");
        int value = 0;
        for (char ch : tok) {
            if (ch < '0' || ch > '9')
                throw ConfigError("parse_k_list: bad integer '" + std::string(tok) + "'");
            value = value * 10 + (ch - '0');
            if (value > 1'000'000) throw ConfigError("parse_k_list: k out of range");
        }
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return KSequence::checked(std::move(out)).k;
}

}  // namespace opsplit
