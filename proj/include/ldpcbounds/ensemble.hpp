#pragma once

#include <map>
#include <string>

namespace ldpcbounds {

/// Node-perspective fractions d_k of parity-check equations of degree k,
/// paired with the (design) rate they refer to.
struct CheckProfile {
    std::map<int, double> fractions;
    double rate = 0.0;

    double average_degree() const;
    int max_degree() const;
};

/// Edge-perspective degree distribution pair (lambda, rho). Coefficient maps
/// that sum to 1 within 1e-6 are renormalized (flagged via renormalized());
/// anything farther off is rejected.
class DegreeDistribution {
  public:
    DegreeDistribution(std::map<int, double> lambda, std::map<int, double> rho);

    const std::map<int, double>& lambda() const { return lambda_; }
    const std::map<int, double>& rho() const { return rho_; }
    bool renormalized() const { return renormalized_; }

    /// R_d = 1 - int(rho)/int(lambda); may be negative for pathological input.
    double design_rate() const;

    /// d_k = (rho_k / k) / int(rho), paired with the design rate.
    CheckProfile check_fractions() const;

    /// Parses {"lambda": {"<degree>": fraction, ...}, "rho": {...}}.
    static DegreeDistribution from_json_text(const std::string& text);

  private:
    std::map<int, double> lambda_;
    std::map<int, double> rho_;
    bool renormalized_ = false;
};

/// Check-regular profile: every parity-check has the given degree.
CheckProfile check_regular_profile(int degree, double rate);

/// Parity-check density per information bit, ((1-R)/R) * average degree.
/// Rejects rate outside (0, 1).
double parity_check_density(const CheckProfile& profile);

}  // namespace ldpcbounds
