#pragma once
// Random-coding exponent machinery for finite constellations on the complex AWGN
// channel with unit noise spectral density. The central object is
//
//   E_o(p, rho) = sup_{beta >= 0} -ln Int alpha(y)^(1+rho) dy,
//   alpha(y)    = sum_k q_k e^{beta(|x_k|^2 - p)} f_w(y - x_k)^{1/(1+rho)},
//
// with f_w(y) = exp(-|y|^2)/pi. Factoring out the noise density turns the integral
// into a complex-Gaussian expectation of M(y)^(1+rho), where
// M(y) = sum_k q_k e^{beta(|x_k|^2 - p)} e^{(2 Re(y conj(x_k)) - |x_k|^2)/(1+rho)},
// which is what the Hermite tensor rule evaluates. The tilt beta enforces the
// average-power constraint; for equal-energy constellations it drops out and the
// optimizer short-circuits to beta = 0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "constellation.hpp"
#include "numerics.hpp"
#include "quadrature.hpp"

namespace exponentia {

struct ExponentResult {
    double value = 0.0;
    double rho_opt = 0.0;
    double beta_opt = 0.0;
    double kt_spread = 0.0; // stationarity diagnostic, see kuhn_tucker_residual
};

// Precomputed per-symbol factors of M(y) for fixed (constellation, rho, beta).
struct AlphaKernel {
    AlphaKernel(const Constellation& c, double rho, double beta)
        : rho_(rho), inv1p_(1.0 / (1.0 + rho)) {
        if (!(rho >= 0.0))
            throw std::domain_error("alpha kernel: rho must be >= 0");
        if (!(beta >= 0.0))
            throw std::domain_error("alpha kernel: beta must be >= 0");
        points_ = c.points;
        coef_.resize(c.points.size());
        for (std::size_t k = 0; k < c.points.size(); ++k) {
            const double pk = std::norm(c.points[k]);
            coef_[k] = c.probs[k] * std::exp(beta * (pk - c.power) - pk * inv1p_);
        }
    }

    // M(y): strictly positive mixture of exponentials.
    double m(std::complex<double> y) const {
        double s = 0.0;
        for (std::size_t k = 0; k < points_.size(); ++k) {
            const double re = y.real() * points_[k].real() + y.imag() * points_[k].imag();
            s += coef_[k] * std::exp(2.0 * re * inv1p_);
        }
        return s;
    }

    // Per-symbol factor m_k(y), so that M = sum_k q_k m_k.
    double m_symbol(std::complex<double> y, std::size_t k, const Constellation& c) const {
        const double re = y.real() * points_[k].real() + y.imag() * points_[k].imag();
        return coef_[k] / c.probs[k] * std::exp(2.0 * re * inv1p_);
    }

    double integrand(std::complex<double> y) const { return std::pow(m(y), 1.0 + rho_); }

    double rho() const { return rho_; }

private:
    double rho_;
    double inv1p_;
    std::vector<std::complex<double>> points_;
    std::vector<double> coef_;
};

// -ln Int alpha^(1+rho) dy at a fixed tilt. Singletons carry no information and
// return exactly 0 (the integral is identically 1).
inline double eo_fixed_beta(const Constellation& c, double rho, double beta,
                            const GaussQuadratureRule& rule) {
    validate_constellation(c);
    if (c.points.size() == 1)
        return 0.0;
    const AlphaKernel kernel(c, rho, beta);
    const double e =
        expect_complex_gaussian([&](std::complex<double> y) { return kernel.integrand(y); }, rule);
    if (!(e > 0.0))
        throw integration_error("exponent integral not positive", {0.0, 0.0});
    return -std::log(e);
}

// Stationarity residuals of the tilt optimization:
//   R_k = Int alpha^rho e^{beta(|x_k|^2 - p)} f_w(y - x_k)^{1/(1+rho)} dy
//         - Int alpha^(1+rho) dy
//       = E[M^rho m_k] - E[M^(1+rho)].
// At an optimal (beta, q) all residuals on the support vanish; their spread
// (max - min over symbols) is the reported diagnostic.
inline std::vector<double> kuhn_tucker_residual(const Constellation& c, double rho, double beta,
                                                const GaussQuadratureRule& rule) {
    validate_constellation(c);
    const AlphaKernel kernel(c, rho, beta);
    const double base =
        expect_complex_gaussian([&](std::complex<double> y) { return kernel.integrand(y); }, rule);
    std::vector<double> residuals(c.points.size());
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        const double ek = expect_complex_gaussian(
            [&](std::complex<double> y) {
                return std::pow(kernel.m(y), rho) * kernel.m_symbol(y, k, c);
            },
            rule);
        residuals[k] = ek - base;
    }
    return residuals;
}

inline double kt_spread(const std::vector<double>& residuals) {
    const auto [lo, hi] = std::minmax_element(residuals.begin(), residuals.end());
    return *hi - *lo;
}

// E_o(p, rho) and its optimal tilt, without stationarity diagnostics. This is the
// form optimizer loops should call: the full eo() below adds K+1 extra integrals
// per call for the Kuhn-Tucker spread. The multiplier scales like the marginal
// exponent-per-power, which stays well under 1/2 at small powers and shrinks at
// large ones, so the default cap 4/(1+p) is generous; pass beta_max explicitly to
// widen it. Equal-energy constellations skip the search.
inline std::pair<double, double> eo_value(const Constellation& c, double rho,
                                          const GaussQuadratureRule& rule,
                                          double beta_max = -1.0) {
    validate_constellation(c);
    if (c.points.size() == 1 || equal_energy(c))
        return {c.points.size() == 1 ? 0.0 : eo_fixed_beta(c, rho, 0.0, rule), 0.0};
    if (beta_max < 0.0)
        beta_max = 4.0 / (1.0 + c.power);
    const MaxResult r = golden_max(
        [&](double beta) { return eo_fixed_beta(c, rho, beta, rule); }, 0.0, beta_max);
    return {r.value, r.arg};
}

// E_o(p, rho) with the stationarity diagnostic filled in.
inline ExponentResult eo(const Constellation& c, double rho, const GaussQuadratureRule& rule,
                         double beta_max = -1.0) {
    const auto [value, beta] = eo_value(c, rho, rule, beta_max);
    ExponentResult out;
    out.value = value;
    out.rho_opt = rho;
    out.beta_opt = beta;
    out.kt_spread = c.points.size() == 1
                        ? 0.0
                        : kt_spread(kuhn_tucker_residual(c, rho, beta, rule));
    return out;
}

// Random-coding exponent E_r(r) = sup_{rho in [0,1]} (-rho r + E_o(p, rho)).
// Zero at and beyond the mutual information (the supremum sits at rho = 0).
inline ExponentResult random_coding_exponent(const Constellation& c, double r,
                                             const GaussQuadratureRule& rule) {
    if (!(r >= 0.0))
        throw std::domain_error("random_coding_exponent: rate must be >= 0");
    const MaxResult m = golden_max(
        [&](double rho) { return -rho * r + eo_value(c, rho, rule).first; }, 0.0, 1.0);
    const ExponentResult at = eo(c, m.arg, rule);
    // The rho = 0 endpoint is analytically 0, so quadrature noise there is the
    // only way the supremum could come out negative; clamp it away.
    return {std::max(m.value, 0.0), m.arg, at.beta_opt, at.kt_spread};
}

struct SpherePackingResult {
    ExponentResult exponent;
    bool rho_at_cap = false; // supremum pinned at rho_cap: true bound is larger
};

// Sphere-packing exponent E_sp(r) = sup_{rho in [0, rho_cap]} (-rho r + E_o(p, rho)).
// The true exponent takes rho unbounded and diverges below some rate; a finite cap
// keeps the computation meaningful and the saturation flag reports when it binds.
inline SpherePackingResult sphere_packing_exponent(const Constellation& c, double r,
                                                   double rho_cap,
                                                   const GaussQuadratureRule& rule) {
    if (!(r >= 0.0))
        throw std::domain_error("sphere_packing_exponent: rate must be >= 0");
    if (!(rho_cap > 0.0))
        throw std::domain_error("sphere_packing_exponent: rho_cap must be positive");
    const MaxResult m = golden_max(
        [&](double rho) { return -rho * r + eo_value(c, rho, rule).first; }, 0.0, rho_cap);
    const ExponentResult at = eo(c, m.arg, rule);
    SpherePackingResult out;
    out.exponent = {std::max(m.value, 0.0), m.arg, at.beta_opt, at.kt_spread};
    out.rho_at_cap = (rho_cap - m.arg) <= 1e-6 * std::max(1.0, rho_cap);
    return out;
}

struct CriticalRate {
    double r_crit = 0.0;             // dE_o/drho at rho = 1, nats per symbol
    double z_crit_normalized = 0.0;  // (E_o(p,1) - r_crit) / p
};

// Rate below which the random-coding supremum saturates at rho = 1, and the
// matching power-normalized exponent value there.
inline CriticalRate critical_rate(const Constellation& c, const GaussQuadratureRule& rule) {
    const double r_crit = richardson_derivative(
        [&](double rho) { return eo_value(c, rho, rule).first; }, 1.0, 1e-5);
    const double e1 = eo_value(c, 1.0, rule).first;
    return {r_crit, (e1 - r_crit) / c.power};
}

// I(X; Y) in nats per symbol. Substituting y = x_k + w turns each conditional
// term into a complex-Gaussian expectation; the log-sum includes the j = k term
// e^{-|w|^2}, so the argument of the logarithm never underflows to zero.
inline double mutual_information(const Constellation& c, const GaussQuadratureRule& rule) {
    validate_constellation(c);
    double total = 0.0;
    std::vector<double> a(c.points.size());
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        const double term = expect_complex_gaussian(
            [&](std::complex<double> w) {
                double amax = -std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < c.points.size(); ++j) {
                    a[j] = -std::norm(c.points[k] + w - c.points[j]);
                    amax = std::max(amax, a[j]);
                }
                double s = 0.0;
                for (std::size_t j = 0; j < c.points.size(); ++j)
                    s += c.probs[j] * std::exp(a[j] - amax);
                return -std::norm(w) - (amax + std::log(s));
            },
            rule);
        total += c.probs[k] * term;
    }
    return total;
}

// Reliability-per-unit-power function of the infinite-bandwidth AWGN channel at
// zero rate offset: for x = r/p in [0, 1] it equals 1/2 - x on [0, 1/4] and
// (1 - sqrt(x))^2 on [1/4, 1].
inline double infinite_bandwidth_reliability(double rate_over_power) {
    if (!(rate_over_power >= 0.0) || !(rate_over_power <= 1.0))
        throw std::domain_error("infinite_bandwidth_reliability: argument outside [0, 1]");
    if (rate_over_power <= 0.25)
        return 0.5 - rate_over_power;
    const double s = std::sqrt(rate_over_power);
    return (1.0 - s) * (1.0 - s);
}

} // namespace exponentia
