#include "doctest.h"

#include "korteweg/constitutive.hpp"
#include "korteweg/errors.hpp"

#include <cmath>
#include <random>

using namespace korteweg;

TEST_CASE("power dispatches integer exponents exactly")
{
    CHECK(power(3.0, 2.0) == 9.0);
    CHECK(power(3.0, -2.0) == 1.0 / 9.0);
    CHECK(power(1.7, 0.0) == 1.0);
    CHECK(power(2.0, 5.0) == 32.0);
    CHECK(power(2.5, 1.5) == doctest::Approx(std::pow(2.5, 1.5)).epsilon(1e-15));
    CHECK(power(0.3, -2.7) == doctest::Approx(std::pow(0.3, -2.7)).epsilon(1e-14));
}

TEST_CASE("stress coefficients by hand substitution")
{
    // s1 = -1/2, s1' = 1/4, s01' = 1 at rho = 2
    const ConstitutiveModel model{1.0, 1.0, 1.0, -1.0, 1.0};
    const auto c = stress_coefficients(model, 2.0);
    CHECK(c.p == doctest::Approx(-4.0));
    CHECK(c.alpha1 == doctest::Approx(4.0));
    CHECK(c.alpha2 == doctest::Approx(1.0));
    CHECK(c.alpha3 == doctest::Approx(-2.0));
}

TEST_CASE("stress coefficients with kappa2 = 0 switch capillarity off")
{
    const ConstitutiveModel model{2.0, 0.0, 1.5, -2.0, 3.0};
    const auto c = stress_coefficients(model, 1.0);
    CHECK(c.alpha1 == 0.0);
    CHECK(c.alpha2 == 0.0);
    CHECK(c.alpha3 == 0.0);
    CHECK(c.p == doctest::Approx(-2.0 * 1.5 * 3.0));
}

TEST_CASE("alpha3 = -alpha1 / rho at n = 0")
{
    const ConstitutiveModel model{1.0, 1.0, 1.0, 0.0, 1.0};
    const auto c = stress_coefficients(model, 1.0);
    CHECK(c.alpha1 == doctest::Approx(2.0));
    CHECK(c.alpha3 == doctest::Approx(-2.0));
    CHECK(c.alpha2 == doctest::Approx(2.0));
    CHECK(c.alpha3 * 1.0 + c.alpha1 == doctest::Approx(0.0));
}

TEST_CASE("non-positive density is a domain error")
{
    const ConstitutiveModel model;
    CHECK_THROWS_AS((void)stress_coefficients(model, 0.0), DomainError);
    CHECK_THROWS_AS((void)stress_coefficients(model, -1.0), DomainError);
    CHECK_THROWS_AS((void)serrin_lhs(model, 0.0), DomainError);
    CHECK_THROWS_AS((void)continuous_residual({}, {}, -0.1, 0, 0, 0, 0, 0), DomainError);
}

TEST_CASE("model validation")
{
    CHECK_THROWS_AS(ConstitutiveModel({0.0, 1.0, 1.0, 1.0, 1.0}).validate(), DomainError);
    CHECK_THROWS_AS(ConstitutiveModel({1.0, -1.0, 1.0, 1.0, 1.0}).validate(), DomainError);
    CHECK_THROWS_AS(ConstitutiveModel({1.0, 1.0, 1.0, 1.0, 0.0}).validate(), DomainError);
    CHECK_NOTHROW(ConstitutiveModel({1.0, 0.0, 1.0, 1.0, 1.0}).validate());
}

TEST_CASE("Serrin identity holds for the admissible family")
{
    CHECK(serrin_lhs({1.0, 1.0, 1.0, -1.0, 1.0}, 2.0) == doctest::Approx(0.0));
    const ConstitutiveModel model{3.0, 0.7, 2.0, 1.5, 1.0};
    CHECK(std::abs(serrin_lhs(model, 0.3)) <= 1e-12 * serrin_scale(model, 0.3));
    CHECK(serrin_scale(model, 0.3) > 0.0);
}

TEST_CASE("Serrin raw overload detects non-admissible coefficients")
{
    // alpha1 = 1, alpha2 = 0, alpha3 = rho, dalpha3/drho = 1  ->  rho^2 - 1
    for (double rho : {0.5, 1.0, 2.0, 3.0})
        CHECK(serrin_lhs(1.0, 0.0, rho, 1.0) == doctest::Approx(rho * rho - 1.0));
    CHECK(serrin_lhs(1.0, 0.0, 2.0, 1.0) == doctest::Approx(3.0));
}

TEST_CASE("property: structural identities over random models")
{
    std::mt19937_64 rng(20221);
    std::uniform_real_distribution<double> pos(1e-3, 10.0), expo(-3.0, 3.0), temp(1e-3, 5.0);
    for (int k = 0; k < 500; ++k) {
        const ConstitutiveModel model{pos(rng), pos(rng), expo(rng), expo(rng), temp(rng)};
        const double rho = pos(rng);
        const auto c = stress_coefficients(model, rho);
        CHECK(std::abs(serrin_lhs(model, rho)) <= 1e-12 * serrin_scale(model, rho));
        CHECK(std::abs(c.alpha3 * rho + c.alpha1) <=
              1e-12 * std::max(std::abs(c.alpha1), std::abs(c.alpha3 * rho)));
        CHECK(c.alpha1 >= 0.0);
        CHECK(model.s1(rho) <= 0.0);
    }
}

TEST_CASE("analytic dalpha3/drho matches a central difference")
{
    const ConstitutiveModel model{1.3, 0.8, 0.5, -2.4, 1.7};
    for (double rho : {0.4, 1.0, 2.3}) {
        const double h = 1e-6 * rho;
        const double fd = (stress_coefficients(model, rho + h).alpha3 -
                           stress_coefficients(model, rho - h).alpha3) /
                          (2.0 * h);
        CHECK(alpha3_derivative(model, rho) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("nondimensionalize reproduces the headline parameter set")
{
    const ConstitutiveModel model{2.0, 1.0, 1.0, -1.0, 1.0};
    const PhysicalSetup setup{2.4, 1.0, 3.0, 1.0, -2.0};
    const auto p = nondimensionalize(model, setup);
    CHECK(p.alpha == doctest::Approx(1.0));
    CHECK(p.beta == doctest::Approx(-1.2));
    CHECK(p.gamma == doctest::Approx(-1.0));
    CHECK(p.d == doctest::Approx(3.0));

    // Exponents drop out at unit scales.
    for (double m : {-2.0, 0.5, 3.0})
        CHECK(nondimensionalize({2.0, 1.0, m, 1.7, 1.0}, setup).alpha == doctest::Approx(1.0));
}

TEST_CASE("nondimensionalize with non-unit scales by hand")
{
    // alpha = 3 / 1 * 0.25 * 2^(2+1-2), beta = -9.8 / (1 * 2) * 0.125 * 2^(1-2), gamma = 4 * 0.25 * 2^-1
    const ConstitutiveModel model{3.0, 0.5, 2.0, -1.0, 2.0};
    const PhysicalSetup setup{9.8, 0.5, 1.0, 2.0, 4.0};
    const auto p = nondimensionalize(model, setup);
    CHECK(p.alpha == doctest::Approx(1.5));
    CHECK(p.beta == doctest::Approx(-0.30625));
    CHECK(p.gamma == doctest::Approx(0.5));
    CHECK(p.d == doctest::Approx(2.0));
    CHECK(p.beta < 0.0);
}

TEST_CASE("nondimensionalize edge cases")
{
    const ConstitutiveModel model{2.0, 1.0, 1.0, -1.0, 1.0};
    CHECK(nondimensionalize(model, {2.4, 1.0, 3.0, 1.0, 0.0}).gamma == 0.0);
    CHECK_THROWS_AS((void)nondimensionalize({2.0, 0.0, 1.0, -1.0, 1.0}, {}), SingularModelError);
    CHECK_THROWS_AS((void)nondimensionalize(model, {1.0, 0.0, 1.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("property: nondimensionalize is homogeneous in ell1")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pos(0.2, 4.0), expo(-3.0, 3.0), lam(0.3, 3.0);
    for (int k = 0; k < 100; ++k) {
        const ConstitutiveModel model{pos(rng), pos(rng), expo(rng), expo(rng), pos(rng)};
        PhysicalSetup setup{pos(rng), pos(rng), pos(rng), pos(rng), pos(rng) - 2.0};
        const auto base = nondimensionalize(model, setup);
        const double l = lam(rng);
        setup.ell1 *= l;
        setup.ell2 *= l;
        const auto scaled = nondimensionalize(model, setup);
        CHECK(scaled.alpha == doctest::Approx(base.alpha * l * l).epsilon(1e-12));
        CHECK(scaled.beta == doctest::Approx(base.beta * l * l * l).epsilon(1e-12));
        CHECK(scaled.gamma == doctest::Approx(base.gamma * l * l).epsilon(1e-12));
        CHECK(scaled.d == doctest::Approx(base.d).epsilon(1e-14));
    }
}

TEST_CASE("realize inverts nondimensionalize at unit scales")
{
    const DimensionlessParams p{0.8, -1.2, 0.3, 2.5};
    const auto r = realize(p, {1.0, -2.0});
    const auto back = nondimensionalize(r.model, r.setup);
    CHECK(back.alpha == doctest::Approx(p.alpha));
    CHECK(back.beta == doctest::Approx(p.beta));
    CHECK(back.gamma == doctest::Approx(p.gamma));
    CHECK(back.d == doctest::Approx(p.d));
    CHECK_THROWS_AS((void)realize({-1.0, -1.2, 0.0, 3.0}, {}), DomainError);
    CHECK_THROWS_AS((void)realize({1.0, 0.5, 0.0, 3.0}, {}), DomainError);
}

TEST_CASE("continuous residual vanishes on a matched constant field")
{
    const double c = 1.3;
    for (const Exponents e : {Exponents{1.0, -1.0}, Exponents{1.0, -2.0}, Exponents{2.5, 0.7}}) {
        DimensionlessParams p{0.9, 0.0, 0.0, 3.0};
        p.gamma = -p.alpha * (e.m + 1.0) * power(c, e.m);
        CHECK(continuous_residual(p, e, c, 0, 0, 0, 0, p.gamma) == 0.0);
    }
}

TEST_CASE("continuous residual reduces exactly in the linear cases")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.1, 3.0);
    for (int k = 0; k < 200; ++k) {
        const DimensionlessParams p{pos(rng), u(rng), u(rng), 3.0};
        const double rho = pos(rng), rx = u(rng), ry = u(rng), rxx = u(rng), ryy = u(rng), f = u(rng);
        CHECK(continuous_residual(p, {1.0, -1.0}, rho, rx, ry, rxx, ryy, f) ==
              rxx + ryy + 2.0 * p.alpha * rho + f);
        CHECK(continuous_residual(p, {-1.0, -1.0}, rho, rx, ry, rxx, ryy, f) == rxx + ryy + f);
    }
}

TEST_CASE("continuous residual general form")
{
    // rho=2, m=2, n=1: 4*(1) + 1*2*(0.25+1) + 0.5*3*4 + f
    const DimensionlessParams p{0.5, 0.0, 0.0, 1.0};
    CHECK(continuous_residual(p, {2.0, 1.0}, 2.0, 0.5, 1.0, 0.25, 0.75, -1.0) ==
          doctest::Approx(4.0 + 2.5 + 6.0 - 1.0));
}
