#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace layerlab {

/// First-order system dt U + sum_l A_l d_l U = 0 with square coefficient
/// matrices; the symbol is L(tau, xi) = tau*I + sum_l xi_l*A_l.
struct HyperbolicSystem {
    int dim{0};   // d, number of space variables
    int size{0};  // N
    std::vector<Eigen::MatrixXcd> a;

    /// 2-D transverse electric Maxwell: unknowns (Ex, Ey, Hz), N = 3, d = 2.
    static HyperbolicSystem te_maxwell();

    /// Scalar advection dt + d1 + d2: N = 1, d = 2.
    static HyperbolicSystem scalar_advection_2d();

    [[nodiscard]] Eigen::MatrixXcd symbol(std::complex<double> tau,
                                          const Eigen::VectorXd& xi) const;
};

/**
 * Evaluates both sides of the doubled-system determinant identity: the dN x dN
 * symbol with per-direction absorption sigma against the substituted N x N
 * determinant, returning |lhs - rhs| / max(|lhs|, |rhs|, 1). With sigma = 0
 * the principal-part identity det = tau^{N(d-1)} det L is checked as well and
 * the larger residual is returned. Throws std::domain_error when tau = 0 or
 * tau + sigma_j = 0.
 */
double berenger_symbol_identity(const HyperbolicSystem& sys,
                                std::complex<double> tau,
                                const Eigen::VectorXd& xi,
                                const Eigen::VectorXd& sigma);

/// All tau with det Ltilde(tau, xi; sigma) = 0, i.e. the eigenvalues of minus
/// the frozen doubled generator.
Eigen::VectorXcd berenger_symbol_roots(const HyperbolicSystem& sys,
                                       const Eigen::VectorXd& xi,
                                       const Eigen::VectorXd& sigma);

/// tau^2 - sum_j xi_j^2 tau^2/(tau+sigma_j)^2. Throws when tau + sigma_j = 0.
std::complex<double> spml_symbol_det(std::complex<double> tau,
                                     const Eigen::VectorXd& xi,
                                     const Eigen::VectorXd& sigma);

/**
 * Positive branch tau(xi) = sqrt(xi^T Q xi) of a dispersion relation
 * tau^2 = q(xi) with positive definite Q.
 */
struct DispersionModel {
    Eigen::MatrixXd q;

    static DispersionModel isotropic(int d);
    static DispersionModel from_form(const Eigen::MatrixXd& q);
    /// 2-D form with principal axes rotated by angle_rad and the given
    /// eigenvalues.
    static DispersionModel rotated(double angle_rad, double ev1, double ev2);

    [[nodiscard]] double tau(const Eigen::VectorXd& xi) const;
};

/// v = -grad tau = -Q xi / tau. Throws std::domain_error at xi = 0.
Eigen::VectorXd group_velocity(const DispersionModel& m, const Eigen::VectorXd& xi);

/// Transport coefficient beta = sum_l sigma_l xi_l (d tau/d xi_l) / tau.
double beta(const DispersionModel& m, const Eigen::VectorXd& sigma,
            const Eigen::VectorXd& xi);

/**
 * Classification of a sampled unit direction: outgoing means the ray enters
 * an x1 > 0 layer (v1 > 0); an outgoing direction with beta < -tol is
 * amplified, and |beta| <= tol is reported as boundary.
 */
struct DirectionLabel {
    enum class Class { incoming, outgoing, amplified, boundary };
    double angle_rad{0.0};
    double v1{0.0};
    double beta{0.0};
    Class cls{Class::incoming};
};

std::vector<DirectionLabel> amplification_map(const DispersionModel& m,
                                              const Eigen::VectorXd& sigma,
                                              int n_dirs = 720,
                                              double tol = 1e-12);

/**
 * Leading reflection coefficient of a discontinuous smart layer:
 * R = i*mu*(1+nu)*(xi1^2 - tau^2) / (8*tau*xi1^2), for (tau, xi) on the light
 * cone tau^2 = |xi|^2 with xi1 != 0. Throws std::domain_error off the cone.
 */
std::complex<double> smart_reflection_coefficient(double tau,
                                                  const Eigen::VectorXd& xi,
                                                  double mu, double nu);

}  // namespace layerlab
