#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "exponentia/wideband_awgn.hpp"
#include "test_support.hpp"

using namespace exponentia;
using testsupport::gh48;

TEST_CASE("channel params validation") {
    ChannelParams ok;
    CHECK_NOTHROW(ok.validate());
    ChannelParams bad_z = ok;
    bad_z.z_normalized = 0.3;
    CHECK_THROWS_AS(bad_z.validate(), std::domain_error);
    ChannelParams bad_p = ok;
    bad_p.power_p_total = 0.0;
    CHECK_THROWS_AS(bad_p.validate(), std::domain_error);
    ChannelParams bad_b = ok;
    bad_b.bandwidth_b = -1.0;
    CHECK_THROWS_AS(bad_b.validate(), std::domain_error);
}

TEST_CASE("constrained rate at moderate power") {
    const auto c = make_psk(4, 0.01);
    const auto pt = rate_per_symbol(c, 0.1, gh48());
    const double ratio = pt.rate_per_symbol / c.power;
    // Must sit between the rho = 1 evaluation and the wideband ceiling.
    CHECK(ratio > 0.40);
    CHECK(ratio < 0.4676);
    CHECK(std::abs(ratio - 0.46595) < 1e-3);
    CHECK(std::abs(pt.rho_opt - 0.46485) < 2e-3);
}

TEST_CASE("constrained rate approaches mutual information as z vanishes") {
    const auto c = make_psk(4, 0.05);
    const double mi = mutual_information(c, gh48());
    const auto pt = rate_per_symbol(c, 1e-6, gh48());
    CHECK(pt.rate_per_symbol < mi);
    CHECK(pt.rate_per_symbol > 0.99 * mi);
}

TEST_CASE("constrained rate clamps when the demand is infeasible") {
    // p z = 1 exceeds E_o(p, 1) ~ 0.693 at p = 10 for an antipodal pair.
    const auto c = make_psk(2, 10.0);
    const auto pt = rate_per_symbol(c, 0.1, gh48());
    CHECK(pt.rate_per_symbol == 0.0);

    CHECK_THROWS_AS(rate_per_symbol(c, 0.0, gh48()), std::domain_error);
    CHECK(rate_by_exponent_root(c, 0.1, gh48()) == 0.0);
}

TEST_CASE("supremum and root forms agree") {
    const double pairs[2][2] = {{0.02, 0.01}, {0.5, 0.12}};
    for (const auto& [p, z] : pairs) {
        const auto c = make_psk(4, p);
        const double r_sup = rate_per_symbol(c, z, gh48()).rate_per_symbol;
        const double r_root = rate_by_exponent_root(c, z, gh48());
        CHECK(std::abs(r_sup - r_root) < 1e-9);
    }
}

TEST_CASE("rate curve single sample") {
    const auto curve =
        rate_curve(qpsk_scheme(), 1.0, 0.1, {1.0 / 64.0}, gh48());
    REQUIRE(curve.samples.size() == 1);
    const auto direct = rate_per_symbol(make_psk(4, 1.0 / 64.0), 0.1, gh48());
    CHECK(curve.samples[0].rate_nats_per_s ==
          direct.rate_per_symbol * 64.0);
    CHECK(curve.samples[0].rho_opt == direct.rho_opt);
    CHECK(std::isnan(curve.r0_extrapolated));
    CHECK(std::isnan(curve.slope_extrapolated));
}

TEST_CASE("rate curve extrapolates to the closed-form limit") {
    const auto grid = geometric_grid(1.0 / 64.0, 1.0 / 2048.0, 0.5);
    REQUIRE(grid.size() == 6);
    const auto curve = rate_curve(qpsk_scheme(), 1.0, 0.1, grid, gh48());

    // Rates rise monotonically toward the wideband limit as b falls.
    for (std::size_t i = 1; i < curve.samples.size(); ++i)
        CHECK(curve.samples[i].rate_nats_per_s >
              curve.samples[i - 1].rate_nats_per_s);
    for (const auto& s : curve.samples) {
        CHECK(s.rho_opt > 0.0);
        CHECK(s.rho_opt <= 1.0);
    }

    const auto a = awgn_asymptotes(1.0, 0.1);
    CHECK(std::abs(curve.r0_extrapolated - a.r0) < 2e-3);
    CHECK(std::abs(curve.slope_extrapolated - a.rdot0) <
          0.10 * std::abs(a.rdot0));
}

TEST_CASE("closed-form asymptotes") {
    const auto a = awgn_asymptotes(1.0, 0.1);
    CHECK(std::abs(a.r0 - 0.46754446796632413) < 1e-14);
    CHECK(std::abs(a.rdot0 - (-0.1598469626739012)) < 1e-14);
    CHECK(std::abs(a.rho_star - 0.46247529557426437) < 1e-14);

    // Power enters the limit linearly and the slope quadratically.
    const auto a3 = awgn_asymptotes(3.0, 0.1);
    CHECK(std::abs(a3.r0 - 3.0 * a.r0) < 1e-14 * a3.r0);
    CHECK(std::abs(a3.rdot0 - 9.0 * a.rdot0) < 1e-14 * std::abs(a3.rdot0));

    CHECK_THROWS_AS(awgn_asymptotes(0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(awgn_asymptotes(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(awgn_asymptotes(1.0, 0.25), std::domain_error);
    CHECK_THROWS_AS(awgn_asymptotes(1.0, 0.3), std::domain_error);
}

TEST_CASE("spectral efficiency curve") {
    const auto grid = geometric_grid(1.0 / 64.0, 1.0 / 1024.0, 0.5);
    const auto se = spectral_efficiency_curve(qpsk_scheme(), 1.0, 0.1, grid,
                                              gh48());
    REQUIRE(se.points.size() == grid.size());
    CHECK(se.zero_rate_skipped == 0);
    CHECK(se.points[0].bandwidth_B == 64.0);

    // Recompute the first sample directly.
    const auto direct = rate_per_symbol(make_psk(4, 1.0 / 64.0), 0.1, gh48());
    const double r = direct.rate_per_symbol;
    CHECK(se.points[0].se_bits_s_hz == r / std::numbers::ln2);
    CHECK(se.points[0].ebn0_db ==
          10.0 * std::log10((1.0 / 64.0) * std::numbers::ln2 / r));

    // Wider bandwidth trades spectral efficiency for lower Eb/N0.
    for (std::size_t i = 1; i < se.points.size(); ++i) {
        CHECK(se.points[i].se_bits_s_hz < se.points[i - 1].se_bits_s_hz);
        CHECK(se.points[i].ebn0_db < se.points[i - 1].ebn0_db);
    }
}

TEST_CASE("spectral efficiency skips zero-rate samples") {
    // At P = 10 the b = 1 sample demands p z = 1 > E_o(10, 1) and yields rate
    // zero; smaller ratios are feasible.
    const std::vector<double> grid = {1.0, 0.5, 0.25, 0.125};
    const auto se = spectral_efficiency_curve(bpsk_scheme(), 10.0, 0.1, grid,
                                              gh48());
    CHECK(se.zero_rate_skipped == 1);
    REQUIRE(se.points.size() == 3);
    CHECK(se.points[0].bandwidth_B == 2.0);
}

TEST_CASE("eb/n0 helpers") {
    CHECK(std::abs(ebn0_db_from_rate(1.0, std::numbers::ln2)) < 1e-12);
    CHECK(std::abs(ebn0_db_unconstrained_reference() -
                   (-1.5917453895486159)) < 1e-12);
    CHECK_THROWS_AS(ebn0_db_from_rate(1.0, 0.0), std::domain_error);
}

TEST_CASE("first order optimality of antipodal signaling") {
    const auto grid = geometric_grid(0.01, 0.01 / 32.0, 0.5);
    REQUIRE(grid.size() == 6);

    const auto rep_q = first_order_optimality_check(qpsk_scheme(), 0.1, grid,
                                                    gh48());
    CHECK(rep_q.scheme_symmetric);
    CHECK(rep_q.pass);
    CHECK(std::abs(rep_q.limit_estimate - rep_q.target) < 1e-3);
    CHECK(std::abs(rep_q.target - std::sqrt(0.1)) < 1e-15);

    const auto rep_b = first_order_optimality_check(bpsk_scheme(), 0.1, grid,
                                                    gh48());
    CHECK(rep_b.pass);

    const auto on_off = custom_scheme(
        "on_off", make_custom({{0.0, 0.0}, {2.0, 0.0}}, {0.75, 0.25}));
    const auto rep_o = first_order_optimality_check(on_off, 0.1, grid, gh48());
    CHECK_FALSE(rep_o.scheme_symmetric);
    CHECK_FALSE(rep_o.pass);

    CHECK_THROWS_AS(first_order_optimality_check(qpsk_scheme(), 0.3, grid,
                                                 gh48()),
                    std::domain_error);
    CHECK_THROWS_AS(first_order_optimality_check(qpsk_scheme(), 0.1, {},
                                                 gh48()),
                    std::invalid_argument);
}
