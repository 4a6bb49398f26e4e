#include "oracles.hpp"
#include "random_scenarios.hpp"

#include "svir/equilibria.hpp"
#include "svir/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace svir;
using testing_support::table1_parameters;

namespace {

double rel(double a, double b)
{
    return std::fabs(a - b) / std::fabs(b);
}

} // namespace

TEST_SUITE("equilibria")
{
    TEST_CASE("disease-free equilibrium for Table 1")
    {
        const Parameters p = table1_parameters();
        const Equilibrium e0 = disease_free(p);
        // 0.392465 / 0.006 and 0.005 * 0.392465 / (0.006 * 0.006)
        CHECK(e0.S == doctest::Approx(65.41083333333333).epsilon(1e-12));
        CHECK(e0.V == doctest::Approx(54.50902777777778).epsilon(1e-12));
        CHECK(e0.I == 0.0);
        CHECK(removed_at(e0, p) == doctest::Approx(0.005 * e0.V / 0.001).epsilon(1e-12));
    }

    TEST_CASE("basic reproduction number for the two presets")
    {
        const Parameters p = table1_parameters();
        const double low = basic_reproduction_number(p, IncidenceFunction::bilinear(0.0008), IncidenceFunction::bilinear(0.00064));
        const double high = basic_reproduction_number(p, IncidenceFunction::bilinear(0.002), IncidenceFunction::bilinear(0.0016));
        CHECK(std::fabs(low - 0.8721) <= 1e-4);
        CHECK(std::fabs(high - 2.1804) <= 1e-4);
        CHECK(basic_reproduction_number(p, IncidenceFunction::bilinear(0.0), IncidenceFunction::bilinear(0.0)) == 0.0);
    }

    TEST_CASE("H vanishes at zero and brackets the high-beta root")
    {
        const Parameters p = table1_parameters();
        const auto f = IncidenceFunction::bilinear(0.002);
        const auto h = IncidenceFunction::bilinear(0.0016);
        const auto model = oracle::table1(0.002, 0.0016);
        CHECK(endemic_H(0.0, p, f, h) == 0.0);
        CHECK(std::fabs(endemic_H(1e-14, p, f, h)) < 1e-14);
        CHECK(endemic_H(2.49, p, f, h) > 0.0);
        CHECK(endemic_H(3.0, p, f, h) < 0.0);
        for (double I : {0.1, 2.49, 3.0, 50.0}) {
            CHECK(endemic_H(I, p, f, h) == doctest::Approx(model.H(I)).epsilon(1e-12));
        }
    }

    TEST_CASE("H is negative everywhere when R0 < 1")
    {
        std::mt19937_64 rng(7);
        int checked = 0;
        while (checked < 25) {
            const auto sc = testing_support::draw_scenario(rng);
            if (sc.target_R0 >= 1.0) {
                continue;
            }
            ++checked;
            for (int i = 1; i <= 1000; ++i) {
                const double I = 1e3 * i / 1000.0;
                REQUIRE(endemic_H(I, sc.params, sc.f, sc.h) < 0.0);
            }
        }
    }

    TEST_CASE("endemic equilibrium of the high-beta preset")
    {
        const Parameters p = table1_parameters();
        const auto f = IncidenceFunction::bilinear(0.002);
        const auto h = IncidenceFunction::bilinear(0.0016);
        const auto model = oracle::table1(0.002, 0.0016);
        const double I_ref = oracle::bisect([&](double I) { return model.H(I); }, 2.49, 3.0);
        REQUIRE(std::fabs(model.H(I_ref)) < 1e-12);

        const EndemicSearch s = solve_endemic(p, f, h);
        const Equilibrium& e = s.equilibrium;
        CHECK(e.kind == EquilibriumKind::endemic);
        CHECK(rel(e.I, I_ref) < 1e-12);
        CHECK(std::fabs(s.residual) < 1e-10);
        CHECK(rel(e.S, p.Lambda / (0.002 * e.I + 0.006)) < 1e-12);
        CHECK(rel(e.S * (f.value(e.I) + p.mu + p.alpha), p.Lambda) < 1e-10);
        CHECK(rel(e.V * (h.value(e.I) + p.gamma1 + p.mu), p.alpha * e.S) < 1e-10);
        CHECK(s.scan_points == endemic_scan_points);
        CHECK(s.unique());
        CHECK(s.scan_root_lo <= e.I);
        CHECK(e.I <= s.scan_root_hi);
        CHECK(s.iterations <= endemic_max_bisections);
        CHECK(s.I_upper == doctest::Approx(endemic_upper_bound(p)));
    }

    TEST_CASE("no endemic equilibrium below threshold")
    {
        const Parameters p = table1_parameters();
        CHECK_THROWS_AS(endemic_equilibrium(p, IncidenceFunction::bilinear(0.0008), IncidenceFunction::bilinear(0.00064)),
                        NoEndemicEquilibrium);
        CHECK_THROWS_AS(endemic_equilibrium(p, IncidenceFunction::bilinear(0.0), IncidenceFunction::bilinear(0.0)),
                        NoEndemicEquilibrium);
    }

    TEST_CASE("near-threshold root is small and positive")
    {
        const Parameters p = table1_parameters();
        const Equilibrium e0 = disease_free(p);
        // scale beta so that R0 = 1 + 1e-9 exactly in the formula
        const double target = 1.0 + 1e-9;
        const double beta1 = target * p.infected_exit_rate() / (e0.S + 0.8 * e0.V);
        const auto f = IncidenceFunction::bilinear(beta1);
        const auto h = IncidenceFunction::bilinear(0.8 * beta1);
        REQUIRE(basic_reproduction_number(p, f, h) > 1.0);

        const auto model = oracle::BilinearModel{p.Lambda, p.mu, p.alpha, p.gamma1, p.gamma, p.c, beta1, 0.8 * beta1};
        const Equilibrium e = endemic_equilibrium(p, f, h);
        CHECK(e.I > 0.0);
        CHECK(e.I < 1e-6);
        const double I_ref = oracle::bisect([&](double I) { return model.H(I); }, 0.5 * e.I, 2.0 * e.I);
        CHECK(rel(e.I, I_ref) < 1e-6);
    }

    TEST_CASE("H'(0) identity on the presets")
    {
        const Parameters p = table1_parameters();
        const auto hi = hprime_zero_identity(p, IncidenceFunction::bilinear(0.002), IncidenceFunction::bilinear(0.0016));
        CHECK(std::fabs(hi.rhs - 0.1 * (2.1804 - 1.0)) < 1e-5);
        CHECK(rel(hi.lhs, hi.rhs) < 1e-4);
        const auto lo = hprime_zero_identity(p, IncidenceFunction::bilinear(0.0008), IncidenceFunction::bilinear(0.00064));
        CHECK(std::fabs(lo.rhs - 0.1 * (0.8721 - 1.0)) < 1e-5);
        CHECK(rel(lo.lhs, lo.rhs) < 1e-4);
        const auto zero = hprime_zero_identity(p, IncidenceFunction::bilinear(0.0), IncidenceFunction::bilinear(0.0));
        CHECK(zero.rhs == doctest::Approx(-p.infected_exit_rate()));
        CHECK(rel(zero.lhs, zero.rhs) < 1e-4);
    }

    TEST_CASE("randomized sweep: existence iff R0 > 1, identities at the root")
    {
        std::mt19937_64 rng(20261017);
        for (int trial = 0; trial < 200; ++trial) {
            const auto sc = testing_support::draw_scenario(rng);
            const double R0 = basic_reproduction_number(sc.params, sc.f, sc.h);
            INFO("trial ", trial, " R0 = ", R0, " f = ", sc.f.describe(), " h = ", sc.h.describe());
            REQUIRE(rel(R0, sc.target_R0) < 1e-12);

            const auto id = hprime_zero_identity(sc.params, sc.f, sc.h);
            CHECK(rel(id.lhs, id.rhs) < 1e-4);

            if (R0 < 1.0) {
                CHECK_THROWS_AS(solve_endemic(sc.params, sc.f, sc.h), NoEndemicEquilibrium);
                continue;
            }
            const EndemicSearch s = solve_endemic(sc.params, sc.f, sc.h);
            const Equilibrium& e = s.equilibrium;
            const Parameters& p = sc.params;
            CHECK(e.I > 0.0);
            CHECK(s.unique());
            CHECK(rel(e.S * (sc.f.value(e.I) + p.mu + p.alpha), p.Lambda) < 1e-10);
            CHECK(rel(e.V * (sc.h.value(e.I) + p.gamma1 + p.mu), p.alpha * e.S) < 1e-10);
            // independent bisection on the closed form of H
            auto H = [&](double I) {
                const double fv = sc.f.value(I), hv = sc.h.value(I);
                return p.Lambda * fv / (fv + p.mu + p.alpha) +
                       p.alpha * p.Lambda * hv / ((hv + p.gamma1 + p.mu) * (fv + p.mu + p.alpha)) -
                       (p.gamma + p.mu + p.c) * I;
            };
            const double I_ref = oracle::bisect(H, 0.5 * e.I, std::min(2.0 * e.I, s.I_upper));
            CHECK(rel(e.I, I_ref) < 1e-9);
        }
    }
}
