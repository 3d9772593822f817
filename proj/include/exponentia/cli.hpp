#pragma once
// Command-line front end:
//   exponentia awgn rate-curve | awgn se | awgn asymptotes
//   exponentia fading report | fading rate-curve
//   exponentia verify
// Options come from flags, optionally seeded by --config <file.json> (flags win).
// Exit codes: 0 success, 1 verification failure, 2 usage/domain error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "constellation.hpp"
#include "fading.hpp"
#include "format.hpp"
#include "gallager.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "verify.hpp"
#include "wideband_awgn.hpp"

namespace exponentia::cli {

struct RunConfig {
    std::string scheme = "qpsk"; // bpsk | qpsk | path to a constellation JSON
    double P = 1.0;              // total power, nats/s
    double z = 0.1;              // awgn: normalized per-symbol constraint; fading: per-second
    double t_c = 1.0;            // fading coherence time
    int blocks = 1;              // fading frequency blocks
    double grid_start = 1.0 / 64;
    double grid_stop = 1.0 / 16384;
    double grid_ratio = 0.5;
    bool grid_from_config = false;
    int quad_order = 48;
    int gl_order = 96;
    std::uint64_t seed = 20260819;
    std::string out;
    bool json_output = false;
    double peak_km = 10.0;
    double peak_exponent = 0.25;
    double rho_cap = 8.0;
};

inline void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    cfg.scheme = j.value("scheme", cfg.scheme);
    cfg.P = j.value("P", cfg.P);
    cfg.z = j.value("z", cfg.z);
    cfg.t_c = j.value("t_c", cfg.t_c);
    cfg.blocks = j.value("blocks", cfg.blocks);
    cfg.quad_order = j.value("quad_order", cfg.quad_order);
    cfg.gl_order = j.value("gl_order", cfg.gl_order);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.out = j.value("out", cfg.out);
    cfg.peak_km = j.value("peak_km", cfg.peak_km);
    cfg.peak_exponent = j.value("peak_exponent", cfg.peak_exponent);
    cfg.rho_cap = j.value("rho_cap", cfg.rho_cap);
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        cfg.grid_start = g.value("start", cfg.grid_start);
        cfg.grid_stop = g.value("stop", cfg.grid_stop);
        cfg.grid_ratio = g.value("ratio", cfg.grid_ratio);
        cfg.grid_from_config = true;
    }
}

inline SignalingScheme resolve_scheme(const RunConfig& cfg) {
    const PeakConstraint pk{cfg.peak_km, cfg.peak_exponent};
    if (cfg.scheme == "bpsk")
        return bpsk_scheme(pk);
    if (cfg.scheme == "qpsk")
        return qpsk_scheme(pk);
    std::ifstream in(cfg.scheme);
    if (!in)
        throw std::invalid_argument("scheme must be bpsk, qpsk, or a readable JSON file: " +
                                    cfg.scheme);
    nlohmann::json j;
    in >> j;
    Constellation shape = j.get<Constellation>();
    return custom_scheme(std::filesystem::path(cfg.scheme).stem().string(), std::move(shape),
                         pk);
}

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

inline std::string sidecar_json_path(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".json");
    return p.string();
}

inline std::string with_suffix(const std::string& csv_path, const std::string& suffix) {
    std::filesystem::path p(csv_path);
    const std::string stem = p.stem().string();
    p.replace_filename(stem + suffix + p.extension().string());
    return p.string();
}

inline void warn_peak(const SignalingScheme& scheme, double p) {
    if (!check_peak(scheme, p))
        std::cerr << "warning: scheme '" << scheme.name
                  << "' violates its peak constraint at per-symbol power "
                  << format_double(p) << "\n";
}

} // namespace detail

inline int cmd_awgn_rate_curve(const RunConfig& cfg) {
    const SignalingScheme scheme = resolve_scheme(cfg);
    const auto grid = geometric_grid(cfg.grid_start, cfg.grid_stop, cfg.grid_ratio);
    const GaussQuadratureRule rule = gauss_hermite(cfg.quad_order);
    detail::warn_peak(scheme, cfg.P * grid.front());
    const WidebandCurve curve = rate_curve(scheme, cfg.P, cfg.z, grid, rule);
    const Asymptotes closed = awgn_asymptotes(cfg.P, cfg.z);

    CsvWriter csv({"b", "inv_b", "B", "rate_nats_per_s", "rho_opt"});
    for (const auto& s : curve.samples)
        csv.row({s.b, 1.0 / s.b, 1.0 / s.b, s.rate_nats_per_s, s.rho_opt});
    const std::string out = cfg.out.empty() ? "awgn_rate_curve.csv" : cfg.out;
    detail::write_file(out, csv.str());

    nlohmann::ordered_json j;
    j["command"] = "awgn rate-curve";
    j["scheme"] = scheme.name;
    j["P"] = cfg.P;
    j["z"] = cfg.z;
    j["quad_order"] = cfg.quad_order;
    j["samples"] = curve.samples.size();
    j["r0_extrapolated"] = curve.r0_extrapolated;
    j["slope_extrapolated"] = curve.slope_extrapolated;
    j["closed_form"] = {{"r0", closed.r0}, {"rdot0", closed.rdot0}, {"rho_star", closed.rho_star}};
    const std::string sidecar = detail::sidecar_json_path(out);
    detail::write_file(sidecar, j.dump(2) + "\n");

    std::cout << "wrote " << out << " (" << curve.samples.size() << " samples) and " << sidecar
              << "\n";
    std::cout << "r0: extrapolated=" << format_double(curve.r0_extrapolated)
              << " closed_form=" << format_double(closed.r0) << "\n";
    std::cout << "slope: extrapolated=" << format_double(curve.slope_extrapolated)
              << " closed_form=" << format_double(closed.rdot0) << "\n";
    std::cout << "rho_star closed_form=" << format_double(closed.rho_star) << "\n";
    return 0;
}

inline int cmd_spectral_efficiency(const RunConfig& cfg) {
    const SignalingScheme scheme = resolve_scheme(cfg);
    const auto grid = geometric_grid(cfg.grid_start, cfg.grid_stop, cfg.grid_ratio);
    const GaussQuadratureRule rule = gauss_hermite(cfg.quad_order);
    const SeCurve curve = spectral_efficiency_curve(scheme, cfg.P, cfg.z, grid, rule);
    if (curve.zero_rate_skipped > 0)
        std::cerr << "warning: " << curve.zero_rate_skipped
                  << " grid point(s) skipped (constrained rate is zero there)\n";

    const double ref = ebn0_db_unconstrained_reference();
    CsvWriter csv({"ebn0_db", "se_bits_s_hz", "B", "ebn0_db_z0_ref"});
    for (const auto& pt : curve.points)
        csv.row({pt.ebn0_db, pt.se_bits_s_hz, pt.bandwidth_B, ref});
    const std::string out = cfg.out.empty() ? "spectral_efficiency.csv" : cfg.out;
    detail::write_file(out, csv.str());

    std::cout << "wrote " << out << " (" << curve.points.size() << " points, "
              << curve.zero_rate_skipped << " skipped)\n";
    if (!curve.points.empty())
        std::cout << "widest-band point: ebn0_db=" << format_double(curve.points.back().ebn0_db)
                  << " se=" << format_double(curve.points.back().se_bits_s_hz)
                  << " bits/s/Hz (z=0 reference " << format_double(ref) << " dB)\n";
    return 0;
}

inline int cmd_awgn_asymptotes(const RunConfig& cfg) {
    const Asymptotes a = awgn_asymptotes(cfg.P, cfg.z);
    nlohmann::ordered_json j;
    j["r0"] = a.r0;
    j["rdot0"] = a.rdot0;
    j["rho_star"] = a.rho_star;
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!cfg.out.empty())
        detail::write_file(cfg.out, text);
    return 0;
}

inline int cmd_fading_report(const RunConfig& cfg, bool curve_only) {
    const SignalingScheme scheme = resolve_scheme(cfg);
    FadingSpec spec;
    spec.power_P = cfg.P;
    spec.t_c = cfg.t_c;
    spec.blocks_B = cfg.blocks;
    spec.z_exponent = cfg.z;
    spec.w_c = 1.0 / cfg.grid_start;

    // grid values are 1/w_c, matching the extrapolation variable
    const auto inv_grid = geometric_grid(cfg.grid_start, cfg.grid_stop, cfg.grid_ratio);
    const GaussQuadratureRule gh = gauss_hermite(cfg.quad_order);
    const FadingAsymptotes asym = fading_asymptotes(spec); // throws if z >= z_star

    std::vector<FadingRatePoint> pts(inv_grid.size());
    parallel_for(inv_grid.size(), [&](std::size_t i) {
        FadingSpec s = spec;
        s.w_c = 1.0 / inv_grid[i];
        pts[i] = fading_rate(scheme, s, gh, cfg.gl_order);
    });

    CsvWriter csv({"inv_wc", "wc", "rate_nats_per_s", "rho_opt"});
    for (std::size_t i = 0; i < inv_grid.size(); ++i)
        csv.row({inv_grid[i], 1.0 / inv_grid[i], pts[i].rate_nats_per_s, pts[i].rho_opt});
    const std::string out = cfg.out.empty() ? "fading_rate_curve.csv" : cfg.out;
    detail::write_file(out, csv.str());
    std::cout << "wrote " << out << " (" << inv_grid.size() << " samples)\n";

    double fit_r0 = std::numeric_limits<double>::quiet_NaN();
    double fit_rdot0 = std::numeric_limits<double>::quiet_NaN();
    if (inv_grid.size() >= 4) {
        std::vector<std::pair<double, double>> samples;
        for (std::size_t i = 0; i < inv_grid.size(); ++i)
            samples.emplace_back(inv_grid[i], pts[i].rate_nats_per_s);
        const GridFit fit = fading_slope_fit(samples);
        fit_r0 = fit.limit;
        fit_rdot0 = fit.slope;
        std::cout << "fit: r0=" << format_double(fit_r0) << " (closed "
                  << format_double(asym.r0) << "), rdot0=" << format_double(fit_rdot0)
                  << " (closed " << format_double(asym.rdot0) << ")\n";
    }
    if (curve_only)
        return 0;

    // exponent-rate curve in the infinite-coherence-bandwidth limit
    CsvWriter expcsv({"rate_nats_per_s", "exponent_per_s", "rho_opt"});
    const int n_rates = 33;
    for (int k = 0; k < n_rates; ++k) {
        const double R =
            asym.r_crit + (asym.c_infinity - asym.r_crit) * k / (n_rates - 1);
        const MaxResult m = fading_exponent_infinite_wc(spec, R);
        expcsv.row({R, std::max(m.value, 0.0), m.arg});
    }
    const std::string expout = detail::with_suffix(out, "_exponent");
    detail::write_file(expout, expcsv.str());

    nlohmann::ordered_json j;
    j["z_star"] = asym.z_star;
    j["r0"] = asym.r0;
    j["rdot0"] = asym.rdot0;
    j["rho_star"] = asym.rho_star;
    j["r_crit"] = asym.r_crit;
    j["c_infinity"] = asym.c_infinity;
    j["fit"] = {{"r0", fit_r0}, {"rdot0", fit_rdot0}};
    j["ergodic_capacity_at_largest_wc"] = [&] {
        FadingSpec s = spec;
        s.w_c = 1.0 / inv_grid.back();
        return ergodic_capacity(s, cfg.gl_order);
    }();
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    const std::string sidecar = detail::sidecar_json_path(out);
    detail::write_file(sidecar, text);
    std::cout << "wrote " << expout << " and " << sidecar << "\n";
    return 0;
}

inline int cmd_verify(const RunConfig& cfg) {
    VerifyConfig vc;
    vc.quad_order = cfg.quad_order;
    vc.gl_order = cfg.gl_order;
    vc.seed = cfg.seed;
    const VerifyReport report = run_verification(vc);
    if (cfg.json_output)
        std::cout << report.canonical_json();
    else
        std::cout << report.table();
    if (!cfg.out.empty())
        detail::write_file(cfg.out, report.canonical_json());
    return report.all_pass ? 0 : 1;
}

inline int run_cli(int argc, char** argv) {
    RunConfig cfg;
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string a = argv[i];
            if (a == "--config" && i + 1 < argc)
                apply_config_file(cfg, argv[i + 1]);
            else if (a.rfind("--config=", 0) == 0)
                apply_config_file(cfg, a.substr(9));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"error-exponent-constrained rates for finite constellations on AWGN and "
                 "Rayleigh block-fading channels"};
    app.require_subcommand(1);
    std::string config_dummy;
    app.add_option("--config", config_dummy, "JSON config file (flags override its values)");

    int chosen = 0; // 1..6

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--scheme", cfg.scheme, "bpsk | qpsk | constellation JSON path");
        sub->add_option("--P", cfg.P, "total power (nats/s, N0 = 1)");
        sub->add_option("--quad-order", cfg.quad_order, "Gauss-Hermite order per axis");
        sub->add_option("--out", cfg.out, "output CSV path");
        sub->add_option("--km", cfg.peak_km, "peak constraint coefficient");
        sub->add_option("--peak-exponent", cfg.peak_exponent, "peak constraint exponent");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--grid-start", cfg.grid_start, "largest grid value");
        sub->add_option("--grid-stop", cfg.grid_stop, "smallest grid value");
        sub->add_option("--grid-ratio", cfg.grid_ratio, "grid ratio in (0, 1)");
    };

    CLI::App* awgn = app.add_subcommand("awgn", "additive white Gaussian noise channel");
    awgn->require_subcommand(1);
    CLI::App* arc = awgn->add_subcommand(
        "rate-curve", "constrained rate vs bandwidth ratio, with extrapolated limits");
    add_common(arc);
    add_grid(arc);
    arc->add_option("--z", cfg.z, "normalized exponent constraint in (0, 1/4)");
    arc->callback([&] { chosen = 1; });

    CLI::App* ase = awgn->add_subcommand("se", "spectral efficiency vs Eb/N0");
    add_common(ase);
    add_grid(ase);
    ase->add_option("--z", cfg.z, "normalized exponent constraint in (0, 1/4)");
    ase->callback([&] { chosen = 2; });

    CLI::App* aas = awgn->add_subcommand("asymptotes", "closed-form wideband limits");
    aas->add_option("--P", cfg.P, "total power (nats/s)");
    aas->add_option("--z", cfg.z, "normalized exponent constraint in (0, 1/4)");
    aas->add_option("--out", cfg.out, "optional JSON output path");
    aas->callback([&] { chosen = 3; });

    CLI::App* fad = app.add_subcommand("fading", "coherent Rayleigh doubly-block fading");
    fad->require_subcommand(1);
    CLI::Option* fad_stop = nullptr;
    auto add_fading = [&](CLI::App* sub) {
        add_common(sub);
        sub->add_option("--z", cfg.z, "exponent constraint (per second, unnormalized)");
        sub->add_option("--tc", cfg.t_c, "coherence time (s)");
        sub->add_option("--blocks", cfg.blocks, "independent frequency blocks");
        sub->add_option("--gl-order", cfg.gl_order, "Gauss-Laguerre order");
        sub->add_option("--grid-start", cfg.grid_start, "largest 1/w_c");
        fad_stop = sub->add_option("--grid-stop", cfg.grid_stop, "smallest 1/w_c");
        sub->add_option("--grid-ratio", cfg.grid_ratio, "grid ratio in (0, 1)");
    };
    CLI::App* frep = fad->add_subcommand(
        "report", "asymptote JSON, finite-w_c rate curve, exponent-rate curve");
    add_fading(frep);
    frep->callback([&] { chosen = 4; });
    CLI::Option* frep_stop = fad_stop;
    CLI::App* fcur = fad->add_subcommand("rate-curve", "finite-w_c rate curve only");
    add_fading(fcur);
    fcur->callback([&] { chosen = 5; });
    CLI::Option* fcur_stop = fad_stop;

    CLI::App* ver = app.add_subcommand("verify", "run the acceptance battery");
    ver->add_option("--quad-order", cfg.quad_order, "Gauss-Hermite order per axis");
    ver->add_option("--gl-order", cfg.gl_order, "Gauss-Laguerre order");
    ver->add_option("--seed", cfg.seed, "seed for randomized checks");
    ver->add_flag("--json", cfg.json_output, "emit the canonical JSON report");
    ver->add_option("--out", cfg.out, "also write the canonical JSON report here");
    ver->callback([&] { chosen = 6; });

    // let --config (a top-level option, applied in the pre-scan above) appear
    // after the subcommand as well
    for (CLI::App* sub : {awgn, arc, ase, aas, fad, frep, fcur, ver})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    // fading leaves default to a 1/64 .. 1/1024 coherence-bandwidth grid
    if ((chosen == 4 || chosen == 5) && !cfg.grid_from_config) {
        const CLI::Option* used = (chosen == 4) ? frep_stop : fcur_stop;
        if (used != nullptr && used->count() == 0 && cfg.grid_stop == 1.0 / 16384)
            cfg.grid_stop = 1.0 / 1024;
    }

    try {
        switch (chosen) {
        case 1:
            return cmd_awgn_rate_curve(cfg);
        case 2:
            return cmd_spectral_efficiency(cfg);
        case 3:
            return cmd_awgn_asymptotes(cfg);
        case 4:
            return cmd_fading_report(cfg, false);
        case 5:
            return cmd_fading_report(cfg, true);
        case 6:
            return cmd_verify(cfg);
        default:
            std::cerr << "error: no command selected\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace exponentia::cli
