#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "exponentia/cli.hpp"
#include "exponentia/format.hpp"
#include "exponentia/parallel.hpp"
#include "test_support.hpp"

using namespace exponentia;

namespace {

int run_cli_capture(std::vector<std::string> args, std::string* out_text = nullptr,
                    std::string* err_text = nullptr) {
    args.insert(args.begin(), "exponentia");
    std::vector<char*> argv;
    argv.reserve(args.size());
    for (auto& a : args)
        argv.push_back(a.data());
    std::ostringstream captured_out, captured_err;
    auto* old_out = std::cout.rdbuf(captured_out.rdbuf());
    auto* old_err = std::cerr.rdbuf(captured_err.rdbuf());
    int rc = -1;
    try {
        rc = cli::run_cli(static_cast<int>(argv.size()), argv.data());
    } catch (...) {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
        throw;
    }
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    if (out_text)
        *out_text = captured_out.str();
    if (err_text)
        *err_text = captured_err.str();
    return rc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char ch : text)
        if (ch == '\n')
            ++n;
    return n;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

} // namespace

TEST_CASE("number formatting round trips") {
    const double values[] = {0.1,
                             1.0 / 3.0,
                             1e-300,
                             -2.5,
                             0.0,
                             1e308,
                             5e-324,
                             64.0,
                             0.46754446796632413,
                             -0.1598469626739012};
    for (double v : values) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(64.0) == "64");
}

TEST_CASE("csv writer") {
    CsvWriter csv({"a", "b", "c"});
    csv.row({1.0, 0.5, -2.0});
    csv.row({0.25, 0.1, 3.0});
    const std::string text = csv.str();
    CHECK(first_line(text) == "a,b,c");
    CHECK(count_lines(text) == 3);
    CHECK_THROWS_AS(csv.row({1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(CsvWriter({}), std::invalid_argument);
}

TEST_CASE("parallel for") {
    std::vector<int> got(257, -1);
    parallel_for(got.size(), [&](std::size_t i) { got[i] = static_cast<int>(i); }, 4);
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == static_cast<int>(i));

    // Single-thread path.
    std::vector<int> one(8, -1);
    parallel_for(one.size(), [&](std::size_t i) { one[i] = 1; }, 1);
    for (int v : one)
        CHECK(v == 1);

    // Worker exceptions surface on the calling thread.
    CHECK_THROWS_AS(parallel_for(
                        100,
                        [](std::size_t i) {
                            if (i == 37)
                                throw std::runtime_error("boom");
                        },
                        4),
                    std::runtime_error);

    CHECK(thread_cap() >= 1);
}

TEST_CASE("cli asymptotes json") {
    std::string out;
    const int rc = run_cli_capture({"awgn", "asymptotes", "--P", "1", "--z", "0.1"}, &out);
    CHECK(rc == 0);
    const auto j = nlohmann::json::parse(out);
    const auto want = awgn_asymptotes(1.0, 0.1);
    CHECK(j.at("r0").get<double>() == want.r0);
    CHECK(j.at("rdot0").get<double>() == want.rdot0);
    CHECK(j.at("rho_star").get<double>() == want.rho_star);
}

TEST_CASE("cli rate curve artifacts and determinism") {
    const auto dir = testsupport::scratch_dir();
    const std::string out1 = (dir / "rc1.csv").string();
    const std::string out2 = (dir / "rc2.csv").string();

    auto args = std::vector<std::string>{
        "awgn", "rate-curve", "--scheme", "qpsk", "--P", "1", "--z", "0.1",
        "--grid-start", "0.25", "--grid-stop", "0.0625", "--grid-ratio", "0.5",
        "--quad-order", "24", "--out", out1};
    CHECK(run_cli_capture(args) == 0);

    const std::string csv = read_file(out1);
    CHECK(first_line(csv) == "b,inv_b,B,rate_nats_per_s,rho_opt");
    CHECK(count_lines(csv) == 4); // header + three samples

    const auto sidecar = nlohmann::json::parse(read_file((dir / "rc1.json").string()));
    CHECK(sidecar.at("samples").get<int>() == 3);
    CHECK(sidecar.at("r0_extrapolated").is_null()); // too few samples to fit
    CHECK(sidecar.at("closed_form").contains("rho_star"));
    CHECK(sidecar.at("scheme").get<std::string>() == "qpsk");

    args.back() = out2;
    CHECK(run_cli_capture(args) == 0);
    CHECK(read_file(out1) == read_file(out2));
}

TEST_CASE("cli custom scheme from json") {
    const auto dir = testsupport::scratch_dir();
    const std::string shape_path = (dir / "shape2pt.json").string();
    {
        std::ofstream f(shape_path);
        f << R"({"points": [[0.0, 0.0], [2.0, 0.0]], "probs": [0.75, 0.25]})";
    }
    const std::string out = (dir / "custom.csv").string();
    const int rc = run_cli_capture({"awgn", "rate-curve", "--scheme", shape_path,
                                    "--P", "1", "--z", "0.1", "--grid-start", "0.25",
                                    "--grid-stop", "0.25", "--quad-order", "24",
                                    "--out", out});
    CHECK(rc == 0);
    const auto sidecar = nlohmann::json::parse(read_file((dir / "custom.json").string()));
    CHECK(sidecar.at("scheme").get<std::string>() == "shape2pt");
    CHECK(count_lines(read_file(out)) == 2);

    // Unreadable scheme path is a usage error.
    CHECK(run_cli_capture({"awgn", "rate-curve", "--scheme",
                           (dir / "missing.json").string()}) == 2);
}

TEST_CASE("cli config file with flag precedence") {
    const auto dir = testsupport::scratch_dir();
    const std::string cfg_path = (dir / "cfg.json").string();
    {
        std::ofstream f(cfg_path);
        f << R"({"P": 2.0, "z": 0.12})";
    }
    std::string out;
    CHECK(run_cli_capture({"awgn", "asymptotes", "--config", cfg_path}, &out) == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j.at("r0").get<double>() == awgn_asymptotes(2.0, 0.12).r0);

    // Explicit flags override config values.
    CHECK(run_cli_capture({"awgn", "asymptotes", "--config", cfg_path, "--z", "0.1"},
                          &out) == 0);
    j = nlohmann::json::parse(out);
    CHECK(j.at("r0").get<double>() == awgn_asymptotes(2.0, 0.1).r0);

    CHECK(run_cli_capture({"awgn", "asymptotes", "--config",
                           (dir / "nope.json").string()}) == 2);
}

TEST_CASE("cli fading report artifacts") {
    const auto dir = testsupport::scratch_dir();
    const std::string out = (dir / "fad.csv").string();
    std::string text;
    const int rc = run_cli_capture(
        {"fading", "report", "--z", "0.05", "--grid-start", "0.125", "--grid-stop",
         "0.03125", "--quad-order", "16", "--gl-order", "24", "--out", out},
        &text);
    CHECK(rc == 0);
    CHECK(first_line(read_file(out)) == "inv_wc,wc,rate_nats_per_s,rho_opt");
    CHECK(count_lines(read_file(out)) == 4);

    const std::string expcsv = read_file((dir / "fad_exponent.csv").string());
    CHECK(first_line(expcsv) == "rate_nats_per_s,exponent_per_s,rho_opt");
    CHECK(count_lines(expcsv) == 34);

    const auto sidecar = nlohmann::json::parse(read_file((dir / "fad.json").string()));
    CHECK(std::abs(sidecar.at("z_star").get<double>() - 0.23879844144149772) < 1e-12);
    CHECK(sidecar.at("fit").at("r0").is_null()); // 3 samples, no extrapolation
    CHECK(sidecar.at("c_infinity").get<double>() == 1.0);
}

TEST_CASE("cli fading rate curve only") {
    const auto dir = testsupport::scratch_dir();
    const std::string out = (dir / "fcurve.csv").string();
    const int rc = run_cli_capture({"fading", "rate-curve", "--z", "0.05",
                                    "--grid-start", "0.125", "--grid-stop", "0.03125",
                                    "--quad-order", "16", "--gl-order", "24", "--out",
                                    out});
    CHECK(rc == 0);
    CHECK(count_lines(read_file(out)) == 4);
    // curve-only mode writes no sidecar or exponent files
    CHECK_FALSE(std::filesystem::exists(dir / "fcurve.json"));
    CHECK_FALSE(std::filesystem::exists(dir / "fcurve_exponent.csv"));
}

TEST_CASE("cli rejects infeasible fading demand") {
    std::string err;
    const int rc = run_cli_capture({"fading", "report", "--P", "1", "--z", "0.3"},
                                   nullptr, &err);
    CHECK(rc == 2);
    CHECK(err.find("z_star") != std::string::npos);
}

TEST_CASE("cli usage errors and help") {
    CHECK(run_cli_capture({"bogus"}) == 2);
    CHECK(run_cli_capture({"awgn"}) == 2);
    CHECK(run_cli_capture({}) == 2);

    std::string out;
    CHECK(run_cli_capture({"--help"}, &out) == 0);
    CHECK(out.find("awgn") != std::string::npos);
    CHECK(out.find("fading") != std::string::npos);
    CHECK(out.find("verify") != std::string::npos);
}

TEST_CASE("cli warns on peak constraint violations") {
    const auto dir = testsupport::scratch_dir();
    const std::string out = (dir / "peak.csv").string();
    std::string err;
    const int rc = run_cli_capture(
        {"awgn", "rate-curve", "--P", "1", "--z", "0.1", "--grid-start", "0.25",
         "--grid-stop", "0.25", "--quad-order", "24", "--km", "0.0001", "--out", out},
        nullptr, &err);
    CHECK(rc == 0);
    CHECK(err.find("peak") != std::string::npos);
}

TEST_CASE("verification engine flags an under-resolved rule") {
    VerifyConfig vc;
    vc.quad_order = 4; // cannot integrate the degree-8 Hermite moment
    vc.gl_order = 24;
    vc.run_determinism = false;
    const auto report = run_verification(vc);
    CHECK_FALSE(report.all_pass);
    REQUIRE(report.criteria.size() == 12);

    bool saw_moment_failure = false;
    for (const auto& cr : report.criteria) {
        if (cr.id != 12)
            continue;
        CHECK_FALSE(cr.pass);
        for (const auto& c : cr.checks)
            if (c.name == "hermite_moment_deg8")
                saw_moment_failure = !c.pass;
    }
    CHECK(saw_moment_failure);

    // The table renders one line per criterion plus details for failures.
    const auto table = report.table();
    CHECK(table.find("[FAIL] criterion 12") != std::string::npos);
}
