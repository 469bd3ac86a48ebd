#include "ldpcbounds/threshold.hpp"

#include <cmath>
#include <functional>

namespace ldpcbounds {

namespace {

double rate_bound(const Channel& channel, const Method& method, const CheckProfile& profile,
                  const NumericConfig& cfg) {
    switch (method.kind) {
        case MethodKind::two_level: return rate_ub_two_level(channel, profile, cfg).value;
        case MethodKind::quantized:
            return rate_ub_quantized(channel, method.d, profile, std::nullopt, cfg).value;
        case MethodKind::unquantized: return rate_ub_unquantized(channel, profile, cfg).value;
    }
    throw std::logic_error("rate_bound: unknown method");
}

Channel make_channel(ChannelKind family, double parameter) {
    switch (family) {
        case ChannelKind::BEC: return Channel::bec(parameter);
        case ChannelKind::BSC: return Channel::bsc(parameter);
        case ChannelKind::BiAWGN: return Channel::biawgn(parameter);
    }
    throw std::logic_error("make_channel: unknown family");
}

// Bisection for the noisiest channel parameter at which f(param) >= target;
// f must be nonincreasing in the parameter. `close_enough` decides when the
// bracket is small enough.
double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                         double target, const std::function<bool(double, double)>& close_enough,
                         int& iterations) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo < target || fhi >= target)
        throw BracketError("threshold: rate bound does not cross the design rate in the bracket",
                           flo, fhi);
    iterations = 0;
    while (!close_enough(lo, hi) && iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= target)
            lo = mid;
        else
            hi = mid;
        ++iterations;
    }
    return 0.5 * (lo + hi);
}

void check_monotone_decreasing(const std::function<double(double)>& f, double lo, double hi,
                               int samples) {
    if (samples < 2) return;
    double prev = f(lo);
    for (int i = 1; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1.0);
        const double cur = f(x);
        if (cur > prev + 1e-12)
            throw std::runtime_error(
                "threshold: rate bound is not monotone across the bracket (at parameter " +
                std::to_string(x) + ")");
        prev = cur;
    }
}

}  // namespace

double ebno_db_from_sigma(double sigma, double rate) {
    return 10.0 * std::log10(1.0 / (2.0 * rate * sigma * sigma));
}

double sigma_from_ebno_db(double ebno_db, double rate) {
    return 1.0 / std::sqrt(2.0 * rate * std::pow(10.0, ebno_db / 10.0));
}

std::vector<double> SweepGrid::points() const {
    if (!(step > 0.0) || stop < start)
        throw std::invalid_argument("sweep: grid must be monotone with positive step");
    std::vector<double> xs;
    const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n <= 0) throw std::invalid_argument("sweep: empty grid");
    xs.reserve(n);
    for (int i = 0; i < n; ++i) xs.push_back(start + i * step);
    return xs;
}

ThresholdResult threshold(const ThresholdQuery& query) {
    const double rate = query.profile.rate;
    if (!(rate > 0.0 && rate < 1.0))
        throw std::invalid_argument("threshold: design rate must lie in (0, 1)");
    const ThresholdOptions& opt = query.options;

    if (query.family == ChannelKind::BiAWGN) {
        auto bound_at = [&](double sigma) {
            return rate_bound(Channel::biawgn(sigma), query.method, query.profile,
                              opt.numerics);
        };
        check_monotone_decreasing(bound_at, opt.sigma_lo, opt.sigma_hi,
                                  opt.monotonicity_samples);
        ThresholdResult result;
        auto close = [&](double lo, double hi) {
            return ebno_db_from_sigma(lo, rate) - ebno_db_from_sigma(hi, rate) < opt.tolerance;
        };
        result.sigma = bisect_decreasing(bound_at, opt.sigma_lo, opt.sigma_hi, rate, close,
                                         result.iterations);
        result.value = ebno_db_from_sigma(result.sigma, rate);
        return result;
    }

    // BSC/BEC: root over the scalar channel parameter, absolute tolerance.
    const double lo = 1e-9;
    const double hi = query.family == ChannelKind::BSC ? 0.5 - 1e-9 : 1.0 - 1e-9;
    auto bound_at = [&](double p) {
        return rate_bound(make_channel(query.family, p), query.method, query.profile,
                          opt.numerics);
    };
    check_monotone_decreasing(bound_at, lo, hi, opt.monotonicity_samples);
    ThresholdResult result;
    auto close = [&](double a, double b) { return b - a < opt.tolerance; };
    result.value = bisect_decreasing(bound_at, lo, hi, rate, close, result.iterations);
    return result;
}

ThresholdResult capacity_limit_db(double rate, const ThresholdOptions& opt) {
    if (!(rate > 0.0 && rate < 1.0))
        throw std::invalid_argument("capacity_limit: rate must lie in (0, 1)");
    auto cap = [&](double sigma) { return Channel::biawgn(sigma).capacity(opt.numerics.quadrature); };
    ThresholdResult result;
    auto close = [&](double lo, double hi) {
        return ebno_db_from_sigma(lo, rate) - ebno_db_from_sigma(hi, rate) < opt.tolerance;
    };
    result.sigma =
        bisect_decreasing(cap, opt.sigma_lo, opt.sigma_hi, rate, close, result.iterations);
    result.value = ebno_db_from_sigma(result.sigma, rate);
    return result;
}

std::vector<ThresholdSweepRow> sweep_thresholds(int right_degree, const SweepGrid& rates,
                                                const ThresholdOptions& options) {
    std::vector<ThresholdSweepRow> rows;
    for (double rate : rates.points()) {
        ThresholdSweepRow row;
        row.rate = rate;
        auto run = [&](const Method& method, std::optional<double>& slot, const char* label) {
            try {
                ThresholdQuery q{check_regular_profile(right_degree, rate), method,
                                 ChannelKind::BiAWGN, options};
                slot = threshold(q).value;
            } catch (const std::exception&) {
                if (row.status == "ok") row.status = std::string("bracket_failure:") + label;
            }
        };
        try {
            row.capacity_db = capacity_limit_db(rate, options).value;
        } catch (const std::exception&) {
            row.status = "bracket_failure:capacity";
        }
        run(Method::two_level(), row.two_level_db, "2level");
        run(Method::quantized(2), row.quantized4_db, "quantized:2");
        run(Method::quantized(3), row.quantized8_db, "quantized:3");
        run(Method::unquantized(), row.unquantized_db, "unquantized");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<DensitySweepRow> sweep_density(double rate, const SweepGrid& ebno_db_grid,
                                           const ThresholdOptions& options) {
    if (!(rate > 0.0 && rate < 1.0))
        throw std::invalid_argument("sweep: rate must lie in (0, 1)");
    std::vector<DensitySweepRow> rows;
    for (double db : ebno_db_grid.points()) {
        DensitySweepRow row;
        row.ebno_db = db;
        try {
            const Channel channel = Channel::biawgn(sigma_from_ebno_db(db, rate));
            const double capacity = channel.capacity(options.numerics.quadrature);
            if (capacity <= rate) {
                row.status = "below_capacity_limit";
                rows.push_back(std::move(row));
                continue;
            }
            const double epsilon = 1.0 - rate / capacity;
            row.epsilon = epsilon;
            row.two_level = density_lb_two_level(channel, epsilon, options.numerics).value;
            row.unquantized =
                density_lb_unquantized(channel, epsilon, std::nullopt, options.numerics).value;
        } catch (const std::exception& e) {
            row.status = std::string("error:") + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ldpcbounds
