#include "korteweg/constitutive.hpp"

#include "korteweg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace korteweg {

namespace {

void require_positive_density(double rho)
{
    if (!(rho > 0.0))
        throw DomainError("density must be positive, got " + std::to_string(rho));
}

constexpr double max_integer_exponent = 64.0;

}  // namespace

double power(double rho, double exponent)
{
    if (exponent == std::trunc(exponent) && std::abs(exponent) <= max_integer_exponent) {
        auto k = static_cast<int>(std::abs(exponent));
        double result = 1.0;
        double base = rho;
        while (k > 0) {
            if (k & 1)
                result *= base;
            base *= base;
            k >>= 1;
        }
        return exponent < 0.0 ? 1.0 / result : result;
    }
    return std::exp(exponent * std::log(rho));
}

void ConstitutiveModel::validate() const
{
    if (!(kappa1 > 0.0))
        throw DomainError("kappa1 must be positive");
    if (!(kappa2 >= 0.0))
        throw DomainError("kappa2 must be non-negative");
    if (!(theta0 > 0.0))
        throw DomainError("theta0 must be positive");
    if (!std::isfinite(m) || !std::isfinite(n))
        throw DomainError("exponents must be finite");
}

double ConstitutiveModel::s01(double rho) const
{
    require_positive_density(rho);
    return kappa1 * power(rho, m);
}

double ConstitutiveModel::s01_prime(double rho) const
{
    require_positive_density(rho);
    return kappa1 * m * power(rho, m - 1.0);
}

double ConstitutiveModel::s1(double rho) const
{
    require_positive_density(rho);
    return -kappa2 * power(rho, n);
}

double ConstitutiveModel::s1_prime(double rho) const
{
    require_positive_density(rho);
    return -kappa2 * n * power(rho, n - 1.0);
}

void PhysicalSetup::validate() const
{
    if (!(g >= 0.0))
        throw DomainError("gravity modulus must be non-negative");
    if (!(ell1 > 0.0) || !(ell2 > 0.0))
        throw DomainError("domain lengths must be positive");
    if (!(R0 > 0.0))
        throw DomainError("reference density must be positive");
    if (!std::isfinite(kappa))
        throw DomainError("integration constant must be finite");
}

void DimensionlessParams::validate() const
{
    if (!(d > 0.0))
        throw DomainError("aspect ratio d must be positive");
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
        throw DomainError("dimensionless parameters must be finite");
}

StressCoefficients stress_coefficients(const ConstitutiveModel& model, double rho)
{
    require_positive_density(rho);
    const double theta0 = model.theta0;
    const double s1 = model.s1(rho);
    StressCoefficients c;
    c.p = -rho * rho * model.s01_prime(rho) * theta0;
    c.alpha1 = -2.0 * rho * rho * s1 * theta0;
    c.alpha2 = -rho * theta0 * (rho * model.s1_prime(rho) + 2.0 * s1);
    c.alpha3 = 2.0 * rho * s1 * theta0;
    return c;
}

double alpha3_derivative(const ConstitutiveModel& model, double rho)
{
    // alpha3 = -2 theta0 kappa2 rho^(n+1)
    require_positive_density(rho);
    return -2.0 * model.theta0 * model.kappa2 * (model.n + 1.0) * power(rho, model.n);
}

double serrin_lhs(double alpha1, double alpha2, double alpha3, double dalpha3_drho)
{
    return alpha3 * alpha3 - alpha1 * dalpha3_drho + 2.0 * alpha2 * alpha3;
}

double serrin_lhs(const ConstitutiveModel& model, double rho)
{
    const auto c = stress_coefficients(model, rho);
    return serrin_lhs(c.alpha1, c.alpha2, c.alpha3, alpha3_derivative(model, rho));
}

double serrin_scale(const ConstitutiveModel& model, double rho)
{
    const auto c = stress_coefficients(model, rho);
    const double da3 = alpha3_derivative(model, rho);
    return std::max({std::abs(c.alpha3 * c.alpha3), std::abs(c.alpha1 * da3),
                     std::abs(2.0 * c.alpha2 * c.alpha3)});
}

DimensionlessParams nondimensionalize(const ConstitutiveModel& model, const PhysicalSetup& setup)
{
    model.validate();
    setup.validate();
    if (!(model.kappa2 > 0.0))
        throw SingularModelError("kappa2 = 0: the gradient-entropy scale is needed to "
                                 "nondimensionalize");
    const double two_k2 = 2.0 * model.kappa2;
    const double ell1 = setup.ell1;
    const double ell1_sq = ell1 * ell1;
    const double r0_scale = power(setup.R0, -model.n - 2.0);

    DimensionlessParams out;
    out.alpha = model.kappa1 / two_k2 * ell1_sq * power(setup.R0, model.m - model.n - 2.0);
    out.beta = -setup.g / (two_k2 * model.theta0) * ell1_sq * ell1 * r0_scale;
    out.gamma = setup.kappa / two_k2 * ell1_sq * r0_scale;
    out.d = setup.ell2 / ell1;
    return out;
}

PhysicalRealization realize(const DimensionlessParams& params, const Exponents& exps)
{
    params.validate();
    if (!(params.alpha > 0.0))
        throw DomainError("a physical realization needs alpha > 0 (kappa1 > 0)");
    if (!(params.beta <= 0.0))
        throw DomainError("a physical realization needs beta <= 0 (g >= 0)");

    PhysicalRealization r;
    r.model = {2.0 * params.alpha, 1.0, exps.m, exps.n, 1.0};
    r.setup.g = -2.0 * params.beta;
    r.setup.ell1 = 1.0;
    r.setup.ell2 = params.d;
    r.setup.R0 = 1.0;
    r.setup.kappa = 2.0 * params.gamma;
    return r;
}

double continuous_residual(const DimensionlessParams& params, const Exponents& exps, double rho,
                           double rho_x, double rho_y, double rho_xx, double rho_yy,
                           double forcing)
{
    require_positive_density(rho);
    const double n = exps.n;
    const double m = exps.m;
    const double laplacian = rho_xx + rho_yy;
    const double grad_sq = rho_x * rho_x + rho_y * rho_y;
    return power(rho, n + 1.0) * laplacian + 0.5 * (n + 1.0) * power(rho, n) * grad_sq +
           params.alpha * (m + 1.0) * power(rho, m) + forcing;
}

}  // namespace korteweg
