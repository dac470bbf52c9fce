#include <doctest.h>

#include <cmath>

#include "dephcorr/errors.hpp"
#include "dephcorr/experiments.hpp"

using namespace dephcorr;

TEST_CASE("registry holds the eleven scenarios with consistent parameters")
{
    const auto all = builtin_scenarios();
    REQUIRE(all.size() == 11);
    for (const auto& cfg : all) {
        cfg.validate();
        CHECK(find_scenario(cfg.name).name == cfg.name);
    }
    const auto bg2 = find_scenario("BG2");
    CHECK(bg2.bath->gamma1 * 0.25 == doctest::Approx(bg2.bath->gamma2));
    CHECK(bg2.gaussian_strength() == doctest::Approx(bg2.inter.gamma / 3.0));
    CHECK(find_scenario("AG").grid.t_end == doctest::Approx(60.0));
    CHECK(find_scenario("BathOnlyG").initial == InitialKind::MaxCorrelated);

    try {
        find_scenario("XYZ");
        FAIL("expected UnsupportedScenario");
    } catch (const UnsupportedScenario& e) {
        CHECK(std::string(e.what()).find("BG1") != std::string::npos);
    }
}

TEST_CASE("overrides")
{
    auto cfg = find_scenario("BP1");
    apply_override(cfg, "phi", 1.0);
    apply_override(cfg, "samples", 50);
    CHECK(cfg.bath->phi == 1.0);
    CHECK(cfg.grid.samples == 50);
    CHECK_THROWS_AS(apply_override(cfg, "samples", 2.5), ParameterError);
    CHECK_THROWS_AS(apply_override(cfg, "bogus", 1.0), ParameterError);
    auto iso = find_scenario("B1");
    CHECK_THROWS_AS(apply_override(iso, "Gamma1", 0.1), ParameterError);

    auto wrong = find_scenario("AG");
    wrong.inter.kind = InteractionKind::Nonlinear;
    CHECK_THROWS_AS(wrong.validate(), UnsupportedScenario);
}

TEST_CASE("first maximum: parabola vertex, and fallback without an interior peak")
{
    std::vector<double> t, v;
    for (int i = 0; i <= 40; ++i) {
        t.push_back(0.1 * i);
        v.push_back(std::sin(t.back()) + 0.3 * std::sin(3.0 * t.back()));
    }
    const auto fm = first_maximum(t, v);
    CHECK(fm.interior);
    // Exact first maximum of sin t + 0.3 sin 3t: cos t + 0.9 cos 3t = 0.
    double lo = 0.3, hi = 1.3;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::cos(mid) + 0.9 * std::cos(3 * mid) > 0 ? lo : hi) = mid;
    }
    CHECK(fm.t == doctest::Approx(lo).epsilon(5e-3));
    CHECK(fm.value == doctest::Approx(std::sin(lo) + 0.3 * std::sin(3 * lo)).epsilon(1e-3));

    const std::vector<double> tm{0, 1, 2, 3}, mono{0, 1, 2, 3};
    const auto fb = first_maximum(tm, mono);
    CHECK_FALSE(fb.interior);
    CHECK(fb.value == 3.0);
}

TEST_CASE("power-law fit recovers a synthetic square root")
{
    std::vector<int> ks{8, 10, 12, 14, 16, 18};
    std::vector<double> v;
    for (int k : ks) v.push_back(0.7 * std::sqrt(static_cast<double>(k)));
    const auto fit = fit_power_law(ks, v);
    CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::exp(fit.log_prefactor) == doctest::Approx(0.7));
    CHECK(fit.exponent_stderr < 1e-10);
    CHECK_THROWS_AS(fit_power_law(std::vector<int>{1, 2, 3}, std::vector<double>{1, 2, 3}), ParameterError);
    CHECK_THROWS_AS(fit_power_law(std::vector<int>{1, 2, 3, 4}, std::vector<double>{1, 2, 0, 3}), ParameterError);
}

TEST_CASE("runs are deterministic and sweeps match single runs")
{
    auto cfg = find_scenario("BG1");
    apply_override(cfg, "t_end", 10.0);
    apply_override(cfg, "samples", 21);
    const auto a = run_scenario(cfg, 6);
    const auto b = run_scenario(cfg, 6);
    REQUIRE(a.size() == 21);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].negativity == b[i].negativity);
        CHECK(a[i].hs_participation == b[i].hs_participation);
    }
    const std::vector<int> ks{4, 6};
    const auto sweep = run_sweep(cfg, ks);
    CHECK(sweep.at(6).back().negativity == a.back().negativity);
    CHECK(a.front().negativity == 0.0);
    CHECK(a.back().energy1 + a.back().energy2 == doctest::Approx(6.0).epsilon(1e-8));
}

TEST_CASE("halving the tolerances moves the sampled negativity by less than 1e-6")
{
    const auto cfg = find_scenario("AG");
    const auto a = run_scenario(cfg, 8);
    IntegratorOptions half;
    half.atol *= 0.5;
    half.rtol *= 0.5;
    const auto b = run_scenario(cfg, 8, half);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i].negativity - b[i].negativity));
    CHECK(worst < 1e-6);
}

TEST_CASE("oracle check at small k")
{
    const auto rep = oracle_check(find_scenario("BP2"), 4, 21);
    CHECK(rep.max_deviation < 1e-8);
    CHECK(rep.max_leakage < 1e-9);
    CHECK(rep.max_charge_drift < 1e-9);
    CHECK(rep.t_end == doctest::Approx(50.0));
}
