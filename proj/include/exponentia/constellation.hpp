#pragma once
// Finite complex constellations with prior probabilities, and the signaling-scheme
// wrapper that regenerates a constellation at any requested average power while
// tracking a peak-amplitude constraint. Powers are in energy-per-symbol units with
// unit noise spectral density.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace exponentia {

struct Constellation {
    std::vector<std::complex<double>> points;
    std::vector<double> probs;
    double power = 0.0; // sum_k probs[k] * |points[k]|^2
};

// Consistency rules: matching non-empty sizes, nonnegative probabilities summing
// to 1 within 1e-12, stored power matching the computed second moment within
// 1e-12 (relative for large powers), and pairwise-distinct points. Coincident
// points are rejected rather than merged so that priors stay auditable.
inline void validate_constellation(const Constellation& c) {
    if (c.points.empty() || c.points.size() != c.probs.size())
        throw std::invalid_argument("constellation: points/probs size mismatch or empty");
    double psum = 0.0;
    double second_moment = 0.0;
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        if (!(c.probs[k] >= 0.0))
            throw std::invalid_argument("constellation: negative probability");
        psum += c.probs[k];
        second_moment += c.probs[k] * std::norm(c.points[k]);
    }
    if (std::abs(psum - 1.0) > 1e-12)
        throw std::invalid_argument("constellation: probabilities must sum to 1");
    if (std::abs(second_moment - c.power) > 1e-12 * std::max(1.0, std::abs(c.power)))
        throw std::invalid_argument("constellation: stored power disagrees with points");
    for (std::size_t j = 0; j < c.points.size(); ++j)
        for (std::size_t k = j + 1; k < c.points.size(); ++k)
            if (std::abs(c.points[j] - c.points[k]) <= 1e-12)
                throw std::invalid_argument("constellation: coincident points");
}

inline Constellation make_custom(std::vector<std::complex<double>> points,
                                 std::vector<double> probs) {
    Constellation c;
    c.points = std::move(points);
    c.probs = std::move(probs);
    c.power = 0.0;
    for (std::size_t k = 0; k < c.points.size() && k < c.probs.size(); ++k)
        c.power += c.probs[k] * std::norm(c.points[k]);
    validate_constellation(c);
    return c;
}

// Equiprobable PSK at average power p; order 2 (antipodal) or 4 (quadrature).
inline Constellation make_psk(int order, double p) {
    if (order != 2 && order != 4)
        throw std::invalid_argument("make_psk: order must be 2 or 4");
    if (!(p > 0.0))
        throw std::domain_error("make_psk: power must be positive");
    const double a = std::sqrt(p);
    std::vector<std::complex<double>> pts;
    if (order == 2)
        pts = {{a, 0.0}, {-a, 0.0}};
    else
        pts = {{a, 0.0}, {0.0, a}, {-a, 0.0}, {0.0, -a}};
    return make_custom(std::move(pts), std::vector<double>(order, 1.0 / order));
}

// Rescale to a new average power, preserving shape and priors.
inline Constellation scale_to_power(const Constellation& c, double p) {
    if (!(c.power > 0.0))
        throw std::invalid_argument("scale_to_power: source power must be positive");
    if (!(p > 0.0))
        throw std::domain_error("scale_to_power: target power must be positive");
    Constellation out = c;
    const double s = std::sqrt(p / c.power);
    for (auto& x : out.points)
        x *= s;
    out.power = p;
    return out;
}

inline bool equal_energy(const Constellation& c, double tol = 1e-12) {
    const double scale = std::max(1.0, std::abs(c.power));
    for (const auto& x : c.points)
        if (std::abs(std::norm(x) - c.power) > tol * scale)
            return false;
    return true;
}

// Symmetric under negation: every point has its mirror -x in the set with the
// same prior.
inline bool is_symmetric(const Constellation& c, double tol = 1e-9) {
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        bool found = false;
        for (std::size_t j = 0; j < c.points.size(); ++j) {
            if (std::abs(c.points[j] + c.points[k]) <= tol &&
                std::abs(c.probs[j] - c.probs[k]) <= tol) {
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

// E[exp(2 Re(x1 conj(x2)) / (1+rho)^2)] over independent input pairs; the scalar
// that controls the second-order (bandwidth-penalty) behavior of the exponent.
inline double pairwise_moment(const Constellation& c, double rho) {
    if (!(rho >= 0.0))
        throw std::domain_error("pairwise_moment: rho must be >= 0");
    const double s = 1.0 / ((1.0 + rho) * (1.0 + rho));
    double total = 0.0;
    for (std::size_t j = 0; j < c.points.size(); ++j) {
        double row = 0.0;
        for (std::size_t k = 0; k < c.points.size(); ++k) {
            const double re = c.points[j].real() * c.points[k].real() +
                              c.points[j].imag() * c.points[k].imag();
            row += c.probs[k] * std::exp(2.0 * re * s);
        }
        total += c.probs[j] * row;
    }
    return total;
}

// Peak amplitude budget: max_k |x_k| <= k_m * p^peak_exponent. With the default
// exponent 1/4 any fixed shape satisfies it for small enough power, since
// amplitudes scale like sqrt(p).
struct PeakConstraint {
    double k_m = 10.0;
    double peak_exponent = 0.25;
};

struct SignalingScheme {
    std::string name;
    std::function<Constellation(double)> generator; // power -> constellation
    PeakConstraint peak;

    Constellation at_power(double p) const { return generator(p); }
};

inline SignalingScheme bpsk_scheme(PeakConstraint pk = {}) {
    return {"bpsk", [](double p) { return make_psk(2, p); }, pk};
}

inline SignalingScheme qpsk_scheme(PeakConstraint pk = {}) {
    return {"qpsk", [](double p) { return make_psk(4, p); }, pk};
}

// Fixed shape rescaled to each requested power.
inline SignalingScheme custom_scheme(std::string name, Constellation shape,
                                     PeakConstraint pk = {}) {
    validate_constellation(shape);
    if (!(shape.power > 0.0))
        throw std::invalid_argument("custom_scheme: shape must have positive power");
    return {std::move(name),
            [shape](double p) { return scale_to_power(shape, p); }, pk};
}

inline bool check_peak(const SignalingScheme& scheme, double p) {
    const Constellation c = scheme.at_power(p);
    double peak = 0.0;
    for (const auto& x : c.points)
        peak = std::max(peak, std::abs(x));
    return peak <= scheme.peak.k_m * std::pow(p, scheme.peak.peak_exponent);
}

inline void to_json(nlohmann::json& j, const Constellation& c) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& x : c.points)
        pts.push_back({x.real(), x.imag()});
    j = nlohmann::json{{"points", pts}, {"probs", c.probs}, {"power", c.power}};
}

inline void from_json(const nlohmann::json& j, Constellation& c) {
    c.points.clear();
    for (const auto& pt : j.at("points")) {
        if (!pt.is_array() || pt.size() != 2)
            throw std::invalid_argument("constellation json: points must be [re, im] pairs");
        c.points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
    }
    c.probs = j.at("probs").get<std::vector<double>>();
    if (j.contains("power")) {
        c.power = j.at("power").get<double>();
    } else {
        c.power = 0.0;
        for (std::size_t k = 0; k < c.points.size() && k < c.probs.size(); ++k)
            c.power += c.probs[k] * std::norm(c.points[k]);
    }
    validate_constellation(c);
}

inline void to_json(nlohmann::json& j, const PeakConstraint& pk) {
    j = nlohmann::json{{"k_m", pk.k_m}, {"peak_exponent", pk.peak_exponent}};
}

inline void from_json(const nlohmann::json& j, PeakConstraint& pk) {
    pk.k_m = j.value("k_m", 10.0);
    pk.peak_exponent = j.value("peak_exponent", 0.25);
}

} // namespace exponentia
