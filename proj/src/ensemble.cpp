#include "ldpcbounds/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ldpcbounds {

namespace {

// Validates one coefficient map and normalizes it exactly to unit sum.
// Returns true if a renormalization beyond 1e-12 was applied.
bool validate_and_normalize(std::map<int, double>& coeffs, const char* name) {
    if (coeffs.empty()) throw std::invalid_argument(std::string(name) + ": empty coefficient map");
    double sum = 0.0;
    for (const auto& [degree, fraction] : coeffs) {
        if (degree < 2) throw std::invalid_argument(std::string(name) + ": degrees must be >= 2");
        if (!(fraction >= 0.0))
            throw std::invalid_argument(std::string(name) + ": coefficients must be >= 0");
        sum += fraction;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw std::invalid_argument(std::string(name) + ": coefficients must sum to 1");
    const bool renormalized = std::abs(sum - 1.0) > 1e-12;
    for (auto& [degree, fraction] : coeffs) fraction /= sum;
    return renormalized;
}

double edge_integral(const std::map<int, double>& coeffs) {
    // int_0^1 sum_i c_i x^{i-1} dx = sum_i c_i / i
    double acc = 0.0;
    for (const auto& [degree, fraction] : coeffs) acc += fraction / degree;
    return acc;
}

}  // namespace

double CheckProfile::average_degree() const {
    double acc = 0.0;
    for (const auto& [degree, fraction] : fractions) acc += degree * fraction;
    return acc;
}

int CheckProfile::max_degree() const {
    int deg = 0;
    for (const auto& [degree, fraction] : fractions)
        if (fraction > 0.0) deg = std::max(deg, degree);
    return deg;
}

DegreeDistribution::DegreeDistribution(std::map<int, double> lambda, std::map<int, double> rho)
    : lambda_(std::move(lambda)), rho_(std::move(rho)) {
    const bool rl = validate_and_normalize(lambda_, "lambda");
    const bool rr = validate_and_normalize(rho_, "rho");
    renormalized_ = rl || rr;
}

double DegreeDistribution::design_rate() const {
    return 1.0 - edge_integral(rho_) / edge_integral(lambda_);
}

CheckProfile DegreeDistribution::check_fractions() const {
    const double rho_int = edge_integral(rho_);
    CheckProfile profile;
    for (const auto& [degree, fraction] : rho_) {
        profile.fractions[degree] = fraction / degree / rho_int;
    }
    profile.rate = design_rate();
    return profile;
}

DegreeDistribution DegreeDistribution::from_json_text(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    if (!doc.is_object() || !doc.contains("lambda") || !doc.contains("rho"))
        throw std::invalid_argument("ensemble file: expected object with \"lambda\" and \"rho\"");
    auto read_map = [](const nlohmann::json& obj, const char* name) {
        if (!obj.is_object()) throw std::invalid_argument(std::string(name) + ": expected object");
        std::map<int, double> coeffs;
        for (const auto& [key, value] : obj.items()) {
            size_t pos = 0;
            int degree = 0;
            try {
                degree = std::stoi(key, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != key.size())
                throw std::invalid_argument(std::string(name) + ": degree keys must be integers");
            if (!value.is_number())
                throw std::invalid_argument(std::string(name) + ": fractions must be numbers");
            coeffs[degree] = value.get<double>();
        }
        return coeffs;
    };
    return DegreeDistribution(read_map(doc["lambda"], "lambda"), read_map(doc["rho"], "rho"));
}

CheckProfile check_regular_profile(int degree, double rate) {
    if (degree < 2) throw std::invalid_argument("check_regular_profile: degree must be >= 2");
    CheckProfile profile;
    profile.fractions[degree] = 1.0;
    profile.rate = rate;
    return profile;
}

double parity_check_density(const CheckProfile& profile) {
    if (!(profile.rate > 0.0 && profile.rate < 1.0))
        throw std::invalid_argument("parity_check_density: rate must lie in (0, 1)");
    return (1.0 - profile.rate) / profile.rate * profile.average_degree();
}

}  // namespace ldpcbounds
