#pragma once
// Exponent-constrained rates on the AWGN channel as a function of bandwidth, and
// their closed-form wideband limits. Working units: total power P in nats/s (N0=1),
// bandwidth ratio b = 1/B so that per-symbol power is p = P*b, per-symbol rate r
// in nats per complex symbol, and per-second rate R = r/b. The reliability
// constraint z is the per-symbol exponent requirement normalized by symbol power,
// dimensionless and meaningful on (0, 1/4) in the wideband regime.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "constellation.hpp"
#include "gallager.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace exponentia {

struct ChannelParams {
    double power_p_total = 1.0;
    double bandwidth_b = 1.0;   // b = 1/B
    double z_normalized = 0.1;  // in (0, 1/4)

    void validate() const {
        if (!(power_p_total > 0.0))
            throw std::domain_error("channel params: power must be positive");
        if (!(bandwidth_b > 0.0))
            throw std::domain_error("channel params: bandwidth ratio must be positive");
        if (!(z_normalized > 0.0) || !(z_normalized < 0.25))
            throw std::domain_error("channel params: z must lie in (0, 1/4)");
    }
};

struct RatePoint {
    double rate_per_symbol = 0.0; // nats per complex symbol, clamped at 0
    double rho_opt = 0.0;
};

// Largest per-symbol rate whose random-coding exponent meets p*z:
//   r(p, z) = sup_{rho in (0, 1]} (E_o(p, rho) - p z) / rho,
// clamped at zero when even rho = 1 cannot meet the constraint. Requires z > 0
// (at z = 0 the supremum degenerates to the mutual information as rho -> 0).
inline RatePoint rate_per_symbol(const Constellation& c, double z,
                                 const GaussQuadratureRule& rule) {
    if (!(z > 0.0))
        throw std::domain_error("rate_per_symbol: z must be positive");
    const double pz = c.power * z;
    const MaxResult m = golden_max(
        [&](double rho) { return (eo_value(c, rho, rule).first - pz) / rho; }, 1e-7, 1.0);
    return {std::max(m.value, 0.0), m.arg};
}

// Same rate through the dual form: the root r of E_r(r) = p*z, located by
// bisection on the decreasing function E_r. Exists whenever 0 < p*z < E_o(p, 1);
// returns 0 when the exponent demand exceeds E_o(p, 1). Cross-checks the
// supremum form; the two agree to near machine precision.
inline double rate_by_exponent_root(const Constellation& c, double z,
                                    const GaussQuadratureRule& rule) {
    if (!(z > 0.0))
        throw std::domain_error("rate_by_exponent_root: z must be positive");
    const double pz = c.power * z;
    const double e1 = eo_value(c, 1.0, rule).first;
    if (pz >= e1)
        return 0.0;
    const double hi = mutual_information(c, rule);
    return bisect_root(
        [&](double r) { return random_coding_exponent(c, r, rule).value - pz; }, 0.0, hi,
        1e-12);
}

struct CurveSample {
    double b = 0.0;                // bandwidth ratio 1/B
    double rate_nats_per_s = 0.0;  // R = r/b
    double rho_opt = 0.0;
};

struct WidebandCurve {
    std::vector<CurveSample> samples;
    double r0_extrapolated = std::numeric_limits<double>::quiet_NaN();
    double slope_extrapolated = std::numeric_limits<double>::quiet_NaN();
};

// R(b) over a descending grid of bandwidth ratios; per-symbol power p = P*b.
// Samples are independent and computed in parallel with per-index writes. When
// the grid qualifies (>= 4 samples, geometric) the limit R(0) and the slope
// dR/db at 0 are filled by Richardson extrapolation, else they stay NaN.
inline WidebandCurve rate_curve(const SignalingScheme& scheme, double P, double z,
                                const std::vector<double>& b_grid,
                                const GaussQuadratureRule& rule, int threads = -1) {
    if (!(P > 0.0))
        throw std::domain_error("rate_curve: power must be positive");
    WidebandCurve curve;
    curve.samples.resize(b_grid.size());
    parallel_for(
        b_grid.size(),
        [&](std::size_t i) {
            const double b = b_grid[i];
            if (!(b > 0.0))
                throw std::domain_error("rate_curve: bandwidth ratios must be positive");
            const Constellation c = scheme.at_power(P * b);
            const RatePoint pt = rate_per_symbol(c, z, rule);
            curve.samples[i] = {b, pt.rate_per_symbol / b, pt.rho_opt};
        },
        threads);

    if (b_grid.size() >= 4) {
        std::vector<std::pair<double, double>> pairs;
        pairs.reserve(curve.samples.size());
        for (const auto& s : curve.samples)
            pairs.emplace_back(s.b, s.rate_nats_per_s);
        try {
            const GridFit fit = fit_limit_and_slope(pairs);
            curve.r0_extrapolated = fit.limit;
            curve.slope_extrapolated = fit.slope;
        } catch (const std::invalid_argument&) {
            // non-geometric grid: leave the extrapolations NaN
        }
    }
    return curve;
}

struct Asymptotes {
    double r0 = 0.0;       // lim_{b->0} R(b) = P (1 - sqrt(z))^2, nats/s
    double rdot0 = 0.0;    // dR/db at 0 = -P^2 (1 - sqrt(z))^3 / 2
    double rho_star = 0.0; // limiting maximizer sqrt(z) / (1 - sqrt(z))
};

inline Asymptotes awgn_asymptotes(double P, double z) {
    if (!(P > 0.0))
        throw std::domain_error("awgn_asymptotes: power must be positive");
    if (!(z > 0.0) || !(z < 0.25))
        throw std::domain_error("awgn_asymptotes: z must lie in (0, 1/4)");
    const double s = std::sqrt(z);
    Asymptotes a;
    a.r0 = P * (1.0 - s) * (1.0 - s);
    a.rdot0 = -P * P * (1.0 - s) * (1.0 - s) * (1.0 - s) / 2.0;
    a.rho_star = s / (1.0 - s);
    return a;
}

struct SePoint {
    double ebn0_db = 0.0;
    double se_bits_s_hz = 0.0;
    double bandwidth_B = 0.0;
};

struct SeCurve {
    std::vector<SePoint> points;
    int zero_rate_skipped = 0;
};

// Spectral-efficiency / Eb/N0 trade-off along a bandwidth-ratio grid. Per sample:
// SE = r / (b ln 2) / B = r / ln 2 bits per symbol, Eb/N0 = p ln 2 / r. Samples
// whose constrained rate is zero have no finite Eb/N0 and are skipped (counted).
inline SeCurve spectral_efficiency_curve(const SignalingScheme& scheme, double P, double z,
                                         const std::vector<double>& b_grid,
                                         const GaussQuadratureRule& rule, int threads = -1) {
    if (!(P > 0.0))
        throw std::domain_error("spectral_efficiency_curve: power must be positive");
    std::vector<RatePoint> pts(b_grid.size());
    parallel_for(
        b_grid.size(),
        [&](std::size_t i) {
            if (!(b_grid[i] > 0.0))
                throw std::domain_error("spectral_efficiency_curve: ratios must be positive");
            pts[i] = rate_per_symbol(scheme.at_power(P * b_grid[i]), z, rule);
        },
        threads);

    SeCurve out;
    for (std::size_t i = 0; i < b_grid.size(); ++i) {
        const double r = pts[i].rate_per_symbol;
        if (!(r > 0.0)) {
            ++out.zero_rate_skipped;
            continue;
        }
        const double p = P * b_grid[i];
        const double ebn0 = p * std::numbers::ln2 / r;
        out.points.push_back({10.0 * std::log10(ebn0), r / std::numbers::ln2, 1.0 / b_grid[i]});
    }
    return out;
}

// Minimum Eb/N0 in dB implied by a per-second rate limit R0 at total power P.
inline double ebn0_db_from_rate(double P, double R0) {
    if (!(R0 > 0.0))
        throw std::domain_error("ebn0_db_from_rate: rate must be positive");
    return 10.0 * std::log10(P * std::numbers::ln2 / R0);
}

// Unconstrained (z -> 0) wideband reference endpoint: Eb/N0 = ln 2.
inline double ebn0_db_unconstrained_reference() {
    return 10.0 * std::log10(std::numbers::ln2);
}

struct FirstOrderReport {
    bool scheme_symmetric = false;
    double rho_star = 0.0;
    double target = 0.0;         // rho*/(1+rho*) = sqrt(z)
    double limit_estimate = 0.0; // extrapolated lim_{p->0} E_o(p, rho*)/p
    std::vector<std::pair<double, double>> samples; // (p, E_o(p, rho*)/p)
    double tolerance = 0.0;
    bool pass = false;
};

// First-order optimality of a scheme in the wideband limit: E_o(p, rho*)/p must
// approach rho*/(1+rho*) = sqrt(z) as p -> 0, provided the scheme is symmetric
// under negation. The estimate extrapolates a qualifying geometric power grid,
// else takes the smallest-power sample.
inline FirstOrderReport first_order_optimality_check(const SignalingScheme& scheme, double z,
                                                     const std::vector<double>& p_grid,
                                                     const GaussQuadratureRule& rule,
                                                     double tolerance = 1e-2) {
    if (!(z > 0.0) || !(z < 0.25))
        throw std::domain_error("first_order_optimality_check: z must lie in (0, 1/4)");
    if (p_grid.empty())
        throw std::invalid_argument("first_order_optimality_check: empty power grid");
    FirstOrderReport rep;
    const double s = std::sqrt(z);
    rep.rho_star = s / (1.0 - s);
    rep.target = s;
    rep.tolerance = tolerance;
    rep.scheme_symmetric = is_symmetric(scheme.at_power(p_grid.front()));
    rep.samples.resize(p_grid.size());
    parallel_for(p_grid.size(), [&](std::size_t i) {
        const double p = p_grid[i];
        if (!(p > 0.0))
            throw std::domain_error("first_order_optimality_check: powers must be positive");
        rep.samples[i] = {p, eo_value(scheme.at_power(p), rep.rho_star, rule).first / p};
    });
    if (p_grid.size() >= 4) {
        try {
            rep.limit_estimate = fit_limit_and_slope(rep.samples).limit;
        } catch (const std::invalid_argument&) {
            rep.limit_estimate = rep.samples.back().second;
        }
    } else {
        rep.limit_estimate = rep.samples.back().second;
    }
    rep.pass = rep.scheme_symmetric && std::abs(rep.limit_estimate - rep.target) <= tolerance;
    return rep;
}

} // namespace exponentia
