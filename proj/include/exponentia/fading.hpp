#pragma once
// Coherent Rayleigh doubly-block fading: the band splits into blocks_B independent
// frequency blocks of coherence bandwidth w_c, and the channel gain holds for a
// coherence time t_c, so each block carries d = w_c * t_c symbols under one gain
// realization with squared magnitude t ~ Exp(1), known to the receiver. Per-symbol
// power is p = P / (blocks_B * w_c); exponents and rates are per second (N0 = 1).
//
// The per-second random-coding exponent with an equal-energy constellation is
//   eo_fading(rho) = (B / t_c) * ( -ln E_t[ exp(-d * E_o(p t, rho)) ] ),
// where E_o is the AWGN per-symbol exponent of the constellation scaled to power
// p*t (the tilt vanishes on equal-energy inputs). As w_c grows this climbs to the
// closed form (B / t_c) * ln(1 + rho P t_c / (B (1 + rho))).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "constellation.hpp"
#include "gallager.hpp"
#include "numerics.hpp"
#include "quadrature.hpp"

namespace exponentia {

struct FadingSpec {
    double power_P = 1.0;   // total average power, nats/s
    double t_c = 1.0;       // coherence time, s
    int blocks_B = 1;       // independent frequency blocks
    double w_c = 64.0;      // coherence bandwidth, symbols/s per block
    double z_exponent = 0.0; // required exponent, per second (not power-normalized)

    double d() const { return w_c * t_c; }
    double symbol_power() const { return power_P / (blocks_B * w_c); }

    void validate() const {
        if (!(power_P > 0.0))
            throw std::domain_error("fading spec: power must be positive");
        if (!(t_c > 0.0))
            throw std::domain_error("fading spec: coherence time must be positive");
        if (blocks_B < 1)
            throw std::domain_error("fading spec: need at least one block");
        if (!(w_c > 0.0))
            throw std::domain_error("fading spec: coherence bandwidth must be positive");
        if (!(z_exponent >= 0.0))
            throw std::domain_error("fading spec: z must be >= 0");
    }
};

struct FadingAsymptotes {
    double z_star = 0.0;     // largest per-second exponent with positive wideband rate
    double r0 = 0.0;         // lim_{w_c -> inf} R, nats/s
    double rdot0 = 0.0;      // dR/d(1/w_c) at 0
    double rho_star = 0.0;   // wideband maximizer of the constrained rate
    double r_crit = 0.0;     // rate where the exponent-rate curve leaves rho = 1
    double c_infinity = 0.0; // ergodic capacity limit, equals P
};

// Per-second random-coding exponent at finite coherence bandwidth. Requires an
// equal-energy constellation at FadingSpec's per-symbol power (the power tilt is
// identically zero there; other inputs would need a per-gain tilt search and are
// rejected as unsupported).
inline double eo_fading_iid(const Constellation& c, const FadingSpec& spec, double rho,
                            const GaussQuadratureRule& gh, int gl_order) {
    spec.validate();
    validate_constellation(c);
    if (!(rho >= 0.0))
        throw std::domain_error("eo_fading_iid: rho must be >= 0");
    if (!equal_energy(c))
        throw std::invalid_argument("eo_fading_iid: constellation must be equal-energy");
    const double p = spec.symbol_power();
    if (std::abs(c.power - p) > 1e-9 * std::max(1.0, p))
        throw std::invalid_argument("eo_fading_iid: constellation power must be P/(B*w_c)");
    const double d = spec.d();
    const double outer = expect_unit_exponential(
        [&](double t) {
            const double inner = eo_fixed_beta(scale_to_power(c, p * t), rho, 0.0, gh);
            return std::exp(-d * inner);
        },
        gl_order);
    if (!(outer > 0.0))
        throw integration_error("fading exponent average underflowed", {0.0, 0.0});
    return spec.blocks_B / spec.t_c * (-std::log(outer));
}

// Closed-form w_c -> infinity limit of eo_fading_iid.
inline double eo_fading_limit(const FadingSpec& spec, double rho) {
    spec.validate();
    return spec.blocks_B / spec.t_c *
           std::log1p(rho * spec.power_P * spec.t_c / (spec.blocks_B * (1.0 + rho)));
}

struct FadingRatePoint {
    double rate_nats_per_s = 0.0;
    double rho_opt = 0.0;
};

namespace detail {

// sup over rho in [max(z/P, ~0), 1] of (-z + eo(rho)) / rho for a per-second
// exponent functional eo. The lower restriction drops maximizers that could not
// satisfy the constraint even at capacity-per-unit-power.
template <class EoFn>
MaxResult fading_rate_sup(EoFn&& eo_fn, double z, double P) {
    const double lo = std::max(z / P, 1e-7);
    if (!(lo < 1.0))
        throw std::domain_error("fading rate: z at or above total power");
    return golden_max([&](double rho) { return (-z + eo_fn(rho)) / rho; }, lo, 1.0, 1e-8);
}

} // namespace detail

inline double fading_z_star(const FadingSpec& spec) {
    spec.validate();
    const double x = spec.power_P * spec.t_c / spec.blocks_B;
    return spec.blocks_B / spec.t_c * std::log1p(x / 2.0) -
           spec.power_P / (4.0 + 2.0 * x);
}

inline double fading_r_crit(const FadingSpec& spec) {
    spec.validate();
    return spec.power_P / (4.0 + 2.0 * spec.power_P * spec.t_c / spec.blocks_B);
}

// Exponent-constrained rate at finite coherence bandwidth. Defined for
// z_exponent below z_star; beyond it no positive rate meets the constraint in
// the wideband regime and the request is rejected.
inline FadingRatePoint fading_rate(const SignalingScheme& scheme, const FadingSpec& spec,
                                   const GaussQuadratureRule& gh, int gl_order) {
    spec.validate();
    if (spec.z_exponent >= fading_z_star(spec))
        throw std::domain_error("fading_rate: z at or beyond z_star");
    const Constellation c = scheme.at_power(spec.symbol_power());
    const MaxResult m = detail::fading_rate_sup(
        [&](double rho) { return eo_fading_iid(c, spec, rho, gh, gl_order); },
        spec.z_exponent, spec.power_P);
    return {std::max(m.value, 0.0), m.arg};
}

// Closed-form wideband asymptotics of the constrained rate. r0 and rho_star come
// from maximizing the w_c -> infinity exponent; rdot0 uses rho_star throughout.
inline FadingAsymptotes fading_asymptotes(const FadingSpec& spec) {
    spec.validate();
    FadingAsymptotes a;
    a.z_star = fading_z_star(spec);
    a.r_crit = fading_r_crit(spec);
    a.c_infinity = spec.power_P;
    if (spec.z_exponent >= a.z_star)
        throw std::domain_error("fading_asymptotes: z at or beyond z_star");
    const MaxResult m = detail::fading_rate_sup(
        [&](double rho) { return eo_fading_limit(spec, rho); }, spec.z_exponent,
        spec.power_P);
    a.r0 = std::max(m.value, 0.0);
    a.rho_star = m.arg;
    const double rs = a.rho_star;
    const double x = spec.power_P * spec.t_c / spec.blocks_B;
    const double den = (1.0 + rs + rs * x);
    a.rdot0 = -spec.power_P * spec.power_P / (spec.blocks_B * (1.0 + rs) * den * den);
    return a;
}

// Exponent-rate curve in the w_c -> infinity limit:
//   E(R) = sup_{rho in [0, 1]} (-rho R + (B/t_c) ln(1 + rho P t_c / (B (1+rho)))).
// E(C_infinity) = 0 at rho = 0 and E(r_crit) = z_star at rho = 1; the golden
// search keeps endpoint candidates exactly, so both identities hold to rounding.
inline MaxResult fading_exponent_infinite_wc(const FadingSpec& spec, double R) {
    spec.validate();
    if (!(R >= 0.0))
        throw std::domain_error("fading_exponent_infinite_wc: rate must be >= 0");
    return golden_max(
        [&](double rho) { return -rho * R + eo_fading_limit(spec, rho); }, 0.0, 1.0);
}

// Ergodic capacity at finite coherence bandwidth, nats/s:
//   C = B w_c E_t[ ln(1 + t P / (B w_c)) ], increasing in w_c toward P.
inline double ergodic_capacity(const FadingSpec& spec, int gl_order) {
    spec.validate();
    const double bw = spec.blocks_B * spec.w_c;
    return bw * expect_unit_exponential(
                    [&](double t) { return std::log1p(t * spec.power_P / bw); }, gl_order);
}

// Limit and slope of R against 1/w_c on a descending geometric grid; same
// contract as the AWGN extrapolation (>= 4 samples).
inline GridFit fading_slope_fit(const std::vector<std::pair<double, double>>& samples) {
    return fit_limit_and_slope(samples);
}

} // namespace exponentia
