#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace ldpcbounds {

/// Raised when a multinomial enumeration would exceed the term budget.
struct EnumerationLimitError : std::runtime_error {
    int parts;
    int degree;
    EnumerationLimitError(int parts_, int degree_)
        : std::runtime_error("composition enumeration over " + std::to_string(parts_) +
                             " parts at degree " + std::to_string(degree_) +
                             " exceeds the 1e7 term budget"),
          parts(parts_), degree(degree_) {}
};

/// C(n, r); exact table lookup for n <= 60, log-gamma beyond.
double binomial(int n, int r);

/// Number of compositions of k into m ordered nonnegative parts.
double composition_count(int k, int m);

/// Calls fn(counts) for every composition of k into m parts, in a fixed
/// enumeration order (first part varies slowest).
void for_each_composition(int k, int m, const std::function<void(const std::vector<int>&)>& fn);

/// Multinomial coefficient k! / (counts_0! ... counts_{m-1}!).
double multinomial_coefficient(int k, const std::vector<int>& counts);

/// E[h2((1 - prod_i bias_i^{K_i}) / 2)] with K ~ Multinomial(k, mass).
/// Pairs of zero mass only admit a zero count. Throws EnumerationLimitError
/// when the composition count exceeds 10^7.
double multinomial_pair_entropy(const std::vector<double>& mass,
                                const std::vector<double>& bias, int k);

}  // namespace ldpcbounds
