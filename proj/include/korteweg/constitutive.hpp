#pragma once

// Power-law constitutive family for an isothermal third-grade Korteweg fluid.
//
// Entropy at equilibrium temperature theta0:
//   s = s01(rho) + s1(rho) |grad rho|^2,   s01 = kappa1 rho^m,   s1 = -kappa2 rho^n
// The stress coefficients follow from the thermodynamically admissible
// closure with (ds0/de)^-1 = theta0.

namespace korteweg {

/// rho^e. Integer exponents use repeated multiplication, others exp(e log rho).
double power(double rho, double exponent);

struct Exponents {
    double m = 1.0;
    double n = -1.0;
};

struct ConstitutiveModel {
    double kappa1 = 1.0;
    double kappa2 = 1.0;
    double m = 1.0;
    double n = -1.0;
    double theta0 = 1.0;

    /// Throws DomainError unless kappa1 > 0, kappa2 >= 0, theta0 > 0.
    void validate() const;

    Exponents exponents() const { return {m, n}; }

    double s01(double rho) const;
    double s01_prime(double rho) const;
    /// Always <= 0 for rho > 0.
    double s1(double rho) const;
    double s1_prime(double rho) const;
};

/// Coefficients of the isotropic and gradient-dyad parts of the Cauchy stress.
/// The Hessian coefficient alpha4 vanishes identically and is not stored.
struct StressCoefficients {
    double p = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 0.0;
};

struct PhysicalSetup {
    double g = 1.0;      ///< gravity modulus; 0 switches gravity off
    double ell1 = 1.0;   ///< horizontal length
    double ell2 = 1.0;   ///< vertical length
    double R0 = 1.0;     ///< reference density
    double kappa = 0.0;  ///< integration constant of the resolvent equation

    void validate() const;
};

struct DimensionlessParams {
    double alpha = 1.0;
    double beta = -1.2;
    double gamma = -1.0;
    double d = 3.0;

    void validate() const;
};

StressCoefficients stress_coefficients(const ConstitutiveModel& model, double rho);

/// d alpha3 / d rho, analytic.
double alpha3_derivative(const ConstitutiveModel& model, double rho);

/// alpha3^2 - alpha1 dalpha3/drho + 2 alpha2 alpha3 for the admissible family.
double serrin_lhs(const ConstitutiveModel& model, double rho);

/// Same expression on raw coefficients, for probing non-admissible sets.
double serrin_lhs(double alpha1, double alpha2, double alpha3, double dalpha3_drho);

/// Largest magnitude among the three Serrin terms (scale for relative checks).
double serrin_scale(const ConstitutiveModel& model, double rho);

DimensionlessParams nondimensionalize(const ConstitutiveModel& model, const PhysicalSetup& setup);

/// Unit-scale (kappa2 = theta0 = ell1 = R0 = 1) model and setup whose
/// dimensionless image is `params`. Needs alpha > 0 and beta <= 0.
struct PhysicalRealization {
    ConstitutiveModel model;
    PhysicalSetup setup;
};
PhysicalRealization realize(const DimensionlessParams& params, const Exponents& exps);

/// Left side of the dimensionless equilibrium equation at one point.
/// `forcing` is the affine term beta*y + gamma (plus any extra source)
/// already evaluated at the point's y coordinate.
double continuous_residual(const DimensionlessParams& params, const Exponents& exps, double rho,
                           double rho_x, double rho_y, double rho_xx, double rho_yy,
                           double forcing);

}  // namespace korteweg
