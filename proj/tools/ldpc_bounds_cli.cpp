// Command-line front end: channel capacities, rate/density bounds, Eb/N0
// thresholds, the reference threshold table, and CSV sweep datasets.
//
// Exit codes: 0 success, 1 computation failure, 2 usage error.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>
#include "CLI11.hpp"

#include "ldpcbounds/bounds.hpp"
#include "ldpcbounds/threshold.hpp"

using json = nlohmann::ordered_json;
using namespace ldpcbounds;

namespace {

std::string fnv1a_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

json make_input(const std::string& command, std::initializer_list<std::pair<std::string, json>> fields) {
    json input = json::object();
    std::string canon = command;
    for (const auto& [key, value] : fields) {
        input[key] = value;
        canon += "|" + key + "=" + value.dump();
    }
    input["digest"] = fnv1a_digest(canon);
    return input;
}

json diagnostics_json(const Diagnostics& d) {
    json out;
    out["series_terms"] = d.series_terms;
    out["series_tail"] = d.series_tail;
    out["quadrature_error"] = d.quadrature_error;
    if (std::isfinite(d.solver_residual)) out["solver_residual"] = d.solver_residual;
    out["clamped"] = d.clamped;
    out["vacuous"] = d.vacuous;
    out["flagged"] = d.flagged;
    if (d.active_term != '\0') out["active_term"] = std::string(1, d.active_term);
    return out;
}

void emit(json doc, bool with_meta) {
    if (with_meta) {
        doc["meta"] = {{"tool", "ldpc-bounds"}, {"version", "0.1.0"}};
    }
    std::cout << doc.dump(2) << "\n";
}

Channel channel_from(const std::string& kind, double param) {
    if (kind == "bec") return Channel::bec(param);
    if (kind == "bsc") return Channel::bsc(param);
    if (kind == "biawgn") return Channel::biawgn(param);
    throw CLI::ValidationError("--channel", "expected bec, bsc or biawgn");
}

CheckProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ensemble file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const DegreeDistribution dist = DegreeDistribution::from_json_text(buf.str());
    if (dist.renormalized())
        std::cerr << "warning: ensemble coefficients were renormalized to unit sum\n";
    return dist.check_fractions();
}

struct Table1Row {
    const char* name;
    int degree;
    double rate;
    double expect_capacity, expect_2lv, expect_4lv, expect_8lv, expect_unq;
    double reference_upper;  // typical-pairs threshold, shown as-is
    double reference_de;     // density-evolution threshold, shown as-is
};

const Table1Row kTable1[] = {
    {"(3,6)", 6, 0.5, 0.187, 0.249, 0.332, 0.361, 0.371, 0.673, 1.110},
    {"(4,6)", 6, 1.0 / 3.0, -0.495, -0.488, -0.472, -0.463, -0.463, -0.423, 1.674},
    {"(3,4)", 4, 0.25, -0.794, -0.761, -0.713, -0.694, -0.687, -0.510, 1.003},
};

int cmd_table1() {
    bool all_ok = true;
    std::printf("%-9s %-11s %-11s %-11s %-11s %-13s %-16s %-14s\n", "ensemble",
                "capacity", "2-level", "4-level", "8-level", "un-quantized",
                "upper-bound(ref)", "de-threshold(ref)");
    for (const Table1Row& row : kTable1) {
        const CheckProfile profile = check_regular_profile(row.degree, row.rate);
        auto run = [&](Method m) {
            ThresholdQuery q{profile, m, ChannelKind::BiAWGN, {}};
            return threshold(q).value;
        };
        const double cap = capacity_limit_db(row.rate).value;
        const double b2 = run(Method::two_level());
        const double q4 = run(Method::quantized(2));
        const double q8 = run(Method::quantized(3));
        const double un = run(Method::unquantized());

        auto cell = [&](double value, double expect, double tol) {
            char buf[32];
            const bool ok = std::abs(value - expect) <= tol;
            all_ok &= ok;
            std::snprintf(buf, sizeof buf, "%+.3f%s", value, ok ? "" : " !");
            return std::string(buf);
        };
        char ref_upper[24], ref_de[24];
        std::snprintf(ref_upper, sizeof ref_upper, "%+.3f [3]", row.reference_upper);
        std::snprintf(ref_de, sizeof ref_de, "%+.3f [9]", row.reference_de);
        std::printf("%-9s %-11s %-11s %-11s %-11s %-13s %-16s %-14s\n", row.name,
                    cell(cap, row.expect_capacity, 0.005).c_str(),
                    cell(b2, row.expect_2lv, 0.01).c_str(),
                    cell(q4, row.expect_4lv, 0.01).c_str(),
                    cell(q8, row.expect_8lv, 0.01).c_str(),
                    cell(un, row.expect_unq, 0.01).c_str(), ref_upper, ref_de);
    }
    std::printf("reference columns are literature values, not computed: "
                "upper bound under typical-pairs decoding [3], "
                "density-evolution threshold [9]\n");
    if (!all_ok) {
        std::fprintf(stderr, "error: computed columns marked '!' missed their tolerance\n");
        return 1;
    }
    return 0;
}

std::string csv_number(std::optional<double> v, bool clamp_at_zero = false) {
    if (!v) return "";
    double x = *v;
    if (clamp_at_zero && x < 0.0) x = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

int cmd_sweep(int figure, double start, double stop, double step, int a_r, double rate,
              const std::string& out_path) {
    SweepGrid grid{start, stop, step};
    std::vector<double> points;
    try {
        points = grid.points();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    }

    std::ostringstream csv;
    if (figure == 1) {
        csv << "rate,capacity_db,two_level_db,four_level_db,eight_level_db,unquantized_db,status\n";
        for (const ThresholdSweepRow& row : sweep_thresholds(a_r, grid)) {
            csv << csv_number(row.rate) << ',' << csv_number(row.capacity_db) << ','
                << csv_number(row.two_level_db) << ',' << csv_number(row.quantized4_db) << ','
                << csv_number(row.quantized8_db) << ',' << csv_number(row.unquantized_db) << ','
                << row.status << "\n";
        }
    } else {
        csv << "ebno_db,epsilon,density_lb_2level,density_lb_unquantized,status\n";
        for (const DensitySweepRow& row : sweep_density(rate, grid)) {
            csv << csv_number(row.ebno_db) << ',' << csv_number(row.epsilon) << ','
                << csv_number(row.two_level, true) << ',' << csv_number(row.unquantized, true)
                << ',' << row.status << "\n";
        }
    }

    if (out_path.empty() || out_path == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        out << csv.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Converse bounds on rates and parity-check density of binary linear codes "
                 "over memoryless binary-input output-symmetric channels"};
    app.require_subcommand(1);
    bool with_meta = false;
    app.add_flag("--meta", with_meta, "Attach tool metadata to JSON output");

    // capacity
    auto* cap_cmd = app.add_subcommand("capacity", "Channel capacity in bits per use");
    std::string cap_channel = "biawgn";
    double cap_param = 0.0;
    cap_cmd->add_option("--channel", cap_channel, "bec | bsc | biawgn")->required();
    cap_cmd->add_option("--param", cap_param,
                        "erasure probability (bec), crossover (bsc), or sigma (biawgn)")
        ->required();

    // capacity-limit
    auto* lim_cmd =
        app.add_subcommand("capacity-limit", "Eb/N0 at which BiAWGN capacity equals the rate");
    double lim_rate = 0.5;
    std::string lim_channel = "biawgn";
    lim_cmd->add_option("--rate", lim_rate, "code rate in (0,1)")->required();
    lim_cmd->add_option("--channel", lim_channel, "channel family (biawgn only)");

    // bound rate|density
    auto* bound_cmd = app.add_subcommand("bound", "Rate and density bounds");
    bound_cmd->require_subcommand(1);
    std::string b_channel = "biawgn", b_method = "unquantized", b_ensemble;
    double b_param = 0.0, b_epsilon = 0.1, b_ebno = 0.0;
    bool b_has_param = false, b_has_ebno = false;

    auto* rate_cmd = bound_cmd->add_subcommand("rate", "Upper bound on the achievable rate");
    rate_cmd->add_option("--channel", b_channel, "bec | bsc | biawgn")->required();
    auto* popt = rate_cmd->add_option("--param", b_param, "channel parameter");
    auto* eopt = rate_cmd->add_option("--ebno-db", b_ebno,
                                      "BiAWGN operating point as Eb/N0 (uses the design rate)");
    popt->excludes(eopt);
    rate_cmd->add_option("--ensemble", b_ensemble, "ensemble JSON file")->required();
    rate_cmd->add_option("--method", b_method, "2level | quantized:D | unquantized");

    auto* dens_cmd =
        bound_cmd->add_subcommand("density", "Lower bound on the parity-check density");
    dens_cmd->add_option("--channel", b_channel, "bec | bsc | biawgn")->required();
    dens_cmd->add_option("--param", b_param, "channel parameter")->required();
    dens_cmd->add_option("--epsilon", b_epsilon, "capacity gap fraction in (0,1)")->required();
    dens_cmd->add_option("--method", b_method, "2level | quantized:D | unquantized");

    // threshold
    auto* th_cmd = app.add_subcommand("threshold", "Eb/N0 threshold of a bound family");
    std::string th_ensemble, th_method = "unquantized", th_channel = "biawgn";
    double th_sigma_lo = 0.2, th_sigma_hi = 3.0, th_tol = 1e-4;
    th_cmd->add_option("--ensemble", th_ensemble, "ensemble JSON file")->required();
    th_cmd->add_option("--method", th_method, "2level | quantized:D | unquantized");
    th_cmd->add_option("--channel", th_channel, "bec | bsc | biawgn");
    th_cmd->add_option("--sigma-lo", th_sigma_lo, "bracket lower edge (biawgn)");
    th_cmd->add_option("--sigma-hi", th_sigma_hi, "bracket upper edge (biawgn)");
    th_cmd->add_option("--tol", th_tol, "bisection tolerance (dB for biawgn)");

    // table1
    app.add_subcommand("table1",
                       "Thresholds of the three reference check-regular ensembles, with "
                       "literature reference columns");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "CSV sweep datasets");
    int sw_figure = 1, sw_ar = 6;
    double sw_rate = 0.5;
    double sw_start = std::numeric_limits<double>::quiet_NaN(), sw_stop = 0.0, sw_step = 0.0;
    std::string sw_out;
    sweep_cmd->add_option("--figure", sw_figure, "1: thresholds vs rate, 2: density vs Eb/N0")
        ->required();
    sweep_cmd->add_option("--a-r", sw_ar, "check-node degree (figure 1)");
    sweep_cmd->add_option("--rate", sw_rate, "code rate (figure 2)");
    sweep_cmd->add_option("--start", sw_start, "grid start");
    sweep_cmd->add_option("--stop", sw_stop, "grid stop");
    sweep_cmd->add_option("--step", sw_step, "grid step");
    sweep_cmd->add_option("--out", sw_out, "output CSV path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cap_cmd->parsed()) {
            const Channel ch = channel_from(cap_channel, cap_param);
            const QuadResult info = ch.capacity_info();
            json doc;
            doc["command"] = "capacity";
            doc["input"] = make_input("capacity", {{"channel", cap_channel}, {"param", cap_param}});
            doc["result"] = {{"capacity", info.value},
                             {"source", "computed"},
                             {"diagnostics",
                              {{"quadrature_error", info.error_estimate},
                               {"quadrature_nodes", info.nodes_used},
                               {"quadrature_fallback", info.used_fallback}}}};
            emit(doc, with_meta);
            return 0;
        }

        if (lim_cmd->parsed()) {
            if (lim_channel != "biawgn")
                throw std::invalid_argument("capacity-limit is defined for the biawgn family");
            const ThresholdResult r = capacity_limit_db(lim_rate);
            json doc;
            doc["command"] = "capacity-limit";
            doc["input"] =
                make_input("capacity-limit", {{"channel", lim_channel}, {"rate", lim_rate}});
            doc["result"] = {{"ebno_db", r.value},
                             {"ebno_db_display", (std::ostringstream()
                                                  << std::showpos << std::fixed
                                                  << std::setprecision(3) << r.value)
                                                     .str()},
                             {"sigma", r.sigma},
                             {"source", "computed"}};
            emit(doc, with_meta);
            return 0;
        }

        if (rate_cmd->parsed() || dens_cmd->parsed()) {
            const Method method = Method::parse(b_method);
            const bool is_rate = rate_cmd->parsed();
            CheckProfile profile;
            double param = b_param;
            if (is_rate) {
                profile = load_profile(b_ensemble);
                b_has_param = popt->count() > 0;
                b_has_ebno = eopt->count() > 0;
                if (b_has_ebno) {
                    if (b_channel != "biawgn")
                        throw std::invalid_argument("--ebno-db applies to the biawgn channel");
                    param = sigma_from_ebno_db(b_ebno, profile.rate);
                } else if (!b_has_param) {
                    throw std::invalid_argument("one of --param or --ebno-db is required");
                }
            }
            const Channel ch = channel_from(b_channel, param);

            BoundResult r;
            if (is_rate) {
                switch (method.kind) {
                    case MethodKind::two_level: r = rate_ub_two_level(ch, profile); break;
                    case MethodKind::quantized: r = rate_ub_quantized(ch, method.d, profile); break;
                    case MethodKind::unquantized: r = rate_ub_unquantized(ch, profile); break;
                }
            } else {
                switch (method.kind) {
                    case MethodKind::two_level: r = density_lb_two_level(ch, b_epsilon); break;
                    case MethodKind::quantized:
                        r = density_lb_quantized(ch, method.d, b_epsilon);
                        break;
                    case MethodKind::unquantized:
                        r = density_lb_unquantized(ch, b_epsilon);
                        break;
                }
            }

            json doc;
            doc["command"] = is_rate ? "bound rate" : "bound density";
            if (is_rate) {
                doc["input"] = make_input("bound rate", {{"channel", b_channel},
                                                         {"param", param},
                                                         {"ensemble", b_ensemble},
                                                         {"method", method.name()}});
            } else {
                doc["input"] = make_input("bound density", {{"channel", b_channel},
                                                            {"param", param},
                                                            {"epsilon", b_epsilon},
                                                            {"method", method.name()}});
            }
            json result;
            result["value"] = r.value;
            result["source"] = "computed";
            if (!is_rate) {
                result["value_display"] = std::max(0.0, r.value);  // clamped for display
                if (r.constants) {
                    json c;
                    c["k1"] = r.constants->k1;
                    c["k2"] = r.constants->k2;
                    if (std::isfinite(r.constants->x_star)) c["x_star"] = r.constants->x_star;
                    result["constants"] = c;
                }
            }
            if (r.scheme) result["levels"] = r.scheme->levels;
            result["diagnostics"] = diagnostics_json(r.diagnostics);
            doc["result"] = result;
            emit(doc, with_meta);
            return 0;
        }

        if (th_cmd->parsed()) {
            const CheckProfile profile = load_profile(th_ensemble);
            ThresholdQuery query{profile, Method::parse(th_method)};
            if (th_channel == "bec")
                query.family = ChannelKind::BEC;
            else if (th_channel == "bsc")
                query.family = ChannelKind::BSC;
            else if (th_channel != "biawgn")
                throw std::invalid_argument("threshold: unknown channel family " + th_channel);
            query.options.sigma_lo = th_sigma_lo;
            query.options.sigma_hi = th_sigma_hi;
            query.options.tolerance = th_tol;
            const ThresholdResult r = threshold(query);

            json doc;
            doc["command"] = "threshold";
            doc["input"] = make_input("threshold", {{"channel", th_channel},
                                                    {"ensemble", th_ensemble},
                                                    {"method", query.method.name()},
                                                    {"rate", profile.rate}});
            json result;
            if (query.family == ChannelKind::BiAWGN) {
                result["ebno_db"] = r.value;
                result["ebno_db_display"] =
                    (std::ostringstream() << std::showpos << std::fixed << std::setprecision(3)
                                          << r.value)
                        .str();
                result["sigma"] = r.sigma;
            } else {
                result["parameter"] = r.value;
            }
            result["iterations"] = r.iterations;
            result["source"] = "computed";
            doc["result"] = result;
            emit(doc, with_meta);
            return 0;
        }

        if (app.get_subcommand("table1")->parsed()) return cmd_table1();

        if (sweep_cmd->parsed()) {
            if (sw_figure != 1 && sw_figure != 2) {
                std::fprintf(stderr, "usage error: --figure must be 1 or 2\n");
                return 2;
            }
            if (std::isnan(sw_start)) {
                if (sw_figure == 1) {
                    sw_start = 0.1; sw_stop = 0.9; sw_step = 0.02;
                } else {
                    sw_start = 0.25; sw_stop = 2.0; sw_step = 0.05;
                }
            }
            return cmd_sweep(sw_figure, sw_start, sw_stop, sw_step, sw_ar, sw_rate, sw_out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
