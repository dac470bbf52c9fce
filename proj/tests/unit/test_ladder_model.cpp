#include <doctest.h>

#include <cmath>

#include "dephcorr/errors.hpp"
#include "dephcorr/ladder_model.hpp"

using namespace dephcorr;

namespace {

InteractionSpec nonlinear(int r, int s, double gamma = 0.1)
{
    InteractionSpec i;
    i.kind = InteractionKind::Nonlinear;
    i.r = r;
    i.s = s;
    i.gamma = gamma;
    return i;
}

InteractionSpec band_limited(double gamma = 0.2)
{
    InteractionSpec i;
    i.gamma = gamma;
    return i;
}

}  // namespace

TEST_CASE("band-limited ladder is m + l = k")
{
    const Ladder lad = build_ladder(5, band_limited());
    REQUIRE(lad.size() == 6);
    for (Index i = 0; i < lad.size(); ++i) {
        CHECK(lad.m_values[i] == i);
        CHECK(lad.l_values[i] == 5 - i);
    }
    CHECK(lad.position_of(3) == 3);
    CHECK(lad.position_of(9) == -1);
}

TEST_CASE("nonlinear ladder conserves r m + s l and contains |k 0>")
{
    for (auto [r, s] : {std::pair{1, 1}, {1, 2}, {2, 3}, {3, 2}}) {
        for (int k : {1, 4, 7, 12}) {
            const Ladder lad = build_ladder(k, nonlinear(r, s));
            REQUIRE(lad.size() >= 1);
            CHECK(lad.m_values.back() == k);
            CHECK(lad.l_values.back() == 0);
            for (Index i = 0; i < lad.size(); ++i) CHECK(r * lad.m_values[i] + s * lad.l_values[i] == r * k);
            for (Index i = 1; i < lad.size(); ++i) CHECK(lad.m_values[i] - lad.m_values[i - 1] == s);
        }
    }
    const Ladder lad = build_ladder(7, nonlinear(1, 2));
    CHECK(lad.m_values == std::vector<int>{1, 3, 5, 7});
    CHECK(lad.l_values == std::vector<int>{3, 2, 1, 0});
}

TEST_CASE("nonlinear matrix element equals the product of ladder-operator factors")
{
    // <m+2, l-1| (a1^dag)^2 a2 |m l> = sqrt((m+1)(m+2) l)
    CHECK(nonlinear_matrix_element(3, 4, 1, 2) == doctest::Approx(std::sqrt(4.0 * 5.0 * 4.0)));
    CHECK(nonlinear_matrix_element(0, 1, 1, 1) == doctest::Approx(1.0));
    CHECK(nonlinear_matrix_element(2, 0, 1, 1) == 0.0);
    // Large arguments against a log-gamma evaluation.
    const int m = 200, l = 150, r = 3, s = 4;
    const double logv = 0.5 * (std::lgamma(m + s + 1.0) - std::lgamma(m + 1.0) + std::lgamma(l + 1.0) -
                               std::lgamma(l - r + 1.0));
    CHECK(std::log(nonlinear_matrix_element(m, l, r, s)) == doctest::Approx(logv).epsilon(1e-12));
}

TEST_CASE("generators: energies on the diagonal, couplings between neighbours")
{
    OscillatorSpec osc{0.5, 1.0};
    BathSpec g{BathKind::Gaussian, 0.2, 0.05, 0.0};
    const auto inter = nonlinear(1, 2, 0.1);
    const Ladder lad = build_ladder(9, inter);
    const auto gen = build_generators(lad, osc, g, inter);
    CHECK(hermiticity_defect(gen.h_eff) == 0.0);
    for (Index i = 0; i < lad.size(); ++i) {
        CHECK(gen.h_eff(i, i).real() == doctest::Approx(0.5 * lad.m_values[i] + lad.l_values[i]));
        CHECK(gen.deph(i, i) == Complex(0.0));
        for (Index j = 0; j < lad.size(); ++j) {
            const double dm = lad.m_values[i] - lad.m_values[j];
            const double dl = lad.l_values[i] - lad.l_values[j];
            CHECK(gen.deph(i, j).real() == doctest::Approx(0.2 * 0.25 * dm * dm + 0.05 * dl * dl));
            if (std::abs(i - j) > 1) CHECK(gen.h_eff(i, j) == Complex(0.0));
        }
    }
    for (Index i = 0; i + 1 < lad.size(); ++i) {
        const double expect = 0.1 * nonlinear_matrix_element(lad.m_values[i], lad.l_values[i], 1, 2);
        CHECK(gen.h_eff(i + 1, i).real() == doctest::Approx(expect));
    }
}

TEST_CASE("Poissonian exponents are conjugate-symmetric with nonnegative real part")
{
    OscillatorSpec osc{1.0, 1.0};
    BathSpec p{BathKind::Poissonian, 0.02, 0.03, 2 * M_PI / 7};
    const auto inter = band_limited();
    const Ladder lad = build_ladder(6, inter);
    const auto gen = build_generators(lad, osc, p, inter);
    for (Index i = 0; i < lad.size(); ++i) {
        for (Index j = 0; j < lad.size(); ++j) {
            CHECK(std::abs(gen.deph(i, j) - std::conj(gen.deph(j, i))) < 1e-15);
            CHECK(gen.deph(i, j).real() >= 0.0);
            const double dm = lad.m_values[i] - lad.m_values[j];
            const double dl = lad.l_values[i] - lad.l_values[j];
            const Complex z = 0.02 * (1.0 - std::exp(Complex(0, -p.phi * dm))) +
                              0.03 * (1.0 - std::exp(Complex(0, -p.phi * dl)));
            CHECK(std::abs(gen.deph(i, j) - z) < 1e-14);
        }
    }
    const auto iso = build_generators(lad, osc, std::nullopt, inter);
    CHECK(iso.deph.norm() == 0.0);
    CHECK_THROWS_AS(build_generators(lad, osc, p, nonlinear(1, 2)), UnsupportedScenario);
}

TEST_CASE("initial and maximally correlated states")
{
    const Ladder lad = build_ladder(4, band_limited());
    const auto s0 = initial_state(lad);
    CHECK(s0.rho(4, 4) == Complex(1.0));
    CHECK(s0.rho.norm() == doctest::Approx(1.0));
    validate_state(s0);

    const auto mc = maximally_correlated_state(lad);
    for (Index i = 0; i < 5; ++i)
        for (Index j = 0; j < 5; ++j) CHECK(mc.rho(i, j).real() == doctest::Approx(0.2));
    validate_state(mc);
    CHECK_THROWS_AS(maximally_correlated_state(build_ladder(4, nonlinear(1, 2))), UnsupportedScenario);

    LadderState bad = s0;
    bad.rho(0, 0) = 0.5;
    CHECK_THROWS_AS(validate_state(bad), ParameterError);
    bad = s0;
    bad.rho(0, 0) = -0.1;
    bad.rho(4, 4) = 1.1;
    CHECK_THROWS_AS(validate_state(bad), ParameterError);
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS((BathSpec{BathKind::Gaussian, -1.0, 0.0, 0.0}.validate()), ParameterError);
    CHECK_THROWS_AS((OscillatorSpec{0.0, 1.0}.validate()), ParameterError);
    CHECK_THROWS_AS(nonlinear(0, 1).validate(), ParameterError);
    CHECK_THROWS_AS(build_ladder(0, band_limited()), ParameterError);
}
