#include "ldpcbounds/multinomial.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include "ldpcbounds/channel.hpp"

namespace ldpcbounds {

namespace {

constexpr int kExactLimit = 60;
constexpr double kTermBudget = 1e7;

// Pascal triangle in uint64 up to n = 60 (largest entry C(60,30) ~ 1.2e17).
const std::vector<std::vector<std::uint64_t>>& pascal_table() {
    static const std::vector<std::vector<std::uint64_t>> table = [] {
        std::vector<std::vector<std::uint64_t>> t(kExactLimit + 1);
        for (int n = 0; n <= kExactLimit; ++n) {
            t[n].assign(n + 1, 1);
            for (int r = 1; r < n; ++r) t[n][r] = t[n - 1][r - 1] + t[n - 1][r];
        }
        return t;
    }();
    return table;
}

}  // namespace

double binomial(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    if (n <= kExactLimit) return static_cast<double>(pascal_table()[n][r]);
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0));
}

double composition_count(int k, int m) { return binomial(k + m - 1, m - 1); }

void for_each_composition(int k, int m,
                          const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> counts(m, 0);
    std::function<void(int, int)> rec = [&](int idx, int rem) {
        if (idx == m - 1) {
            counts[idx] = rem;
            fn(counts);
            return;
        }
        for (int c = 0; c <= rem; ++c) {
            counts[idx] = c;
            rec(idx + 1, rem - c);
        }
    };
    rec(0, k);
}

double multinomial_coefficient(int k, const std::vector<int>& counts) {
    double coef = 1.0;
    int rem = k;
    for (int c : counts) {
        coef *= binomial(rem, c);
        rem -= c;
    }
    return coef;
}

double multinomial_pair_entropy(const std::vector<double>& mass,
                                const std::vector<double>& bias, int k) {
    const int m = static_cast<int>(mass.size());
    if (composition_count(k, m) > kTermBudget) throw EnumerationLimitError(m, k);

    double total = 0.0;
    if (k <= kExactLimit) {
        // Power tables; a zero mass with a positive count kills the term.
        std::vector<double> mass_pow(m * (k + 1)), bias_pow(m * (k + 1));
        for (int i = 0; i < m; ++i) {
            mass_pow[i * (k + 1)] = 1.0;
            bias_pow[i * (k + 1)] = 1.0;
            for (int j = 1; j <= k; ++j) {
                mass_pow[i * (k + 1) + j] = mass_pow[i * (k + 1) + j - 1] * mass[i];
                bias_pow[i * (k + 1) + j] = bias_pow[i * (k + 1) + j - 1] * bias[i];
            }
        }
        // Fused enumeration carrying the running weight coef * prod mass^count
        // and the running bias product; binomial coefficients are exact here.
        std::function<void(int, int, double, double)> rec = [&](int idx, int rem, double weight,
                                                                double bias_prod) {
            if (idx == m - 1) {
                const double w = weight * mass_pow[idx * (k + 1) + rem];
                if (w != 0.0)
                    total += w * binary_entropy(
                                     0.5 * (1.0 - bias_prod * bias_pow[idx * (k + 1) + rem]));
                return;
            }
            for (int c = 0; c <= rem; ++c) {
                const double w = weight * binomial(rem, c) * mass_pow[idx * (k + 1) + c];
                if (w != 0.0) rec(idx + 1, rem - c, w, bias_prod * bias_pow[idx * (k + 1) + c]);
            }
        };
        rec(0, k, 1.0, 1.0);
        return total;
    }

    // Large degrees: evaluate each composition weight in log space.
    const double log_k_fact = std::lgamma(k + 1.0);
    std::vector<double> log_mass(m);
    for (int i = 0; i < m; ++i)
        log_mass[i] = mass[i] > 0.0 ? std::log(mass[i]) : -std::numeric_limits<double>::infinity();
    for_each_composition(k, m, [&](const std::vector<int>& counts) {
        double log_w = log_k_fact;
        double bias_prod = 1.0;
        for (int i = 0; i < m; ++i) {
            if (counts[i] == 0) continue;
            if (mass[i] <= 0.0) return;
            log_w += counts[i] * log_mass[i] - std::lgamma(counts[i] + 1.0);
            bias_prod *= std::pow(bias[i], counts[i]);
        }
        total += std::exp(log_w) * binary_entropy(0.5 * (1.0 - bias_prod));
    });
    return total;
}

}  // namespace ldpcbounds
