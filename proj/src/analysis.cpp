#include "layerlab/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace layerlab {

using Cplx = std::complex<double>;

HyperbolicSystem HyperbolicSystem::te_maxwell() {
    HyperbolicSystem s;
    s.dim = 2;
    s.size = 3;
    Eigen::MatrixXcd a1 = Eigen::MatrixXcd::Zero(3, 3);
    Eigen::MatrixXcd a2 = Eigen::MatrixXcd::Zero(3, 3);
    // unknowns (Ex, Ey, Hz):
    //   dt Ex - dy Hz = 0, dt Ey + dx Hz = 0, dt Hz + dx Ey - dy Ex = 0
    a1(1, 2) = 1.0;
    a1(2, 1) = 1.0;
    a2(0, 2) = -1.0;
    a2(2, 0) = -1.0;
    s.a = {a1, a2};
    return s;
}

HyperbolicSystem HyperbolicSystem::scalar_advection_2d() {
    HyperbolicSystem s;
    s.dim = 2;
    s.size = 1;
    s.a = {Eigen::MatrixXcd::Ones(1, 1), Eigen::MatrixXcd::Ones(1, 1)};
    return s;
}

Eigen::MatrixXcd HyperbolicSystem::symbol(Cplx tau, const Eigen::VectorXd& xi) const {
    Eigen::MatrixXcd m = tau * Eigen::MatrixXcd::Identity(size, size);
    for (int l = 0; l < dim; ++l) m += xi[l] * a[l];
    return m;
}

namespace {

/// Doubled symbol with absorption: block (l, m) = xi_l A_l + delta_lm (tau+sigma_l) I.
Eigen::MatrixXcd doubled_symbol(const HyperbolicSystem& sys, Cplx tau,
                                const Eigen::VectorXd& xi, const Eigen::VectorXd& sigma) {
    const int d = sys.dim, N = sys.size;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * N, d * N);
    for (int l = 0; l < d; ++l) {
        for (int k = 0; k < d; ++k) m.block(l * N, k * N, N, N) = xi[l] * sys.a[l];
        m.block(l * N, l * N, N, N) += (tau + sigma[l]) * Eigen::MatrixXcd::Identity(N, N);
    }
    return m;
}

void check_prefactors(const HyperbolicSystem& sys, Cplx tau, const Eigen::VectorXd& sigma) {
    if (std::abs(tau) == 0.0)
        throw std::domain_error("symbol identity: tau must be nonzero");
    for (int j = 0; j < sys.dim; ++j)
        if (std::abs(tau + sigma[j]) == 0.0)
            throw std::domain_error("symbol identity: tau + sigma_j must be nonzero");
}

double rel_residual(Cplx lhs, Cplx rhs) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    return std::abs(lhs - rhs) / scale;
}

}  // namespace

double berenger_symbol_identity(const HyperbolicSystem& sys, Cplx tau,
                                const Eigen::VectorXd& xi, const Eigen::VectorXd& sigma) {
    if (xi.size() != sys.dim || sigma.size() != sys.dim)
        throw std::invalid_argument("symbol identity: xi/sigma dimension mismatch");
    check_prefactors(sys, tau, sigma);
    const int d = sys.dim, N = sys.size;

    const Cplx lhs = doubled_symbol(sys, tau, xi, sigma).determinant();

    // substituted N x N determinant: det L(prod_j(tau+sigma_j),
    //   xi_1 prod_{j!=1}(tau+sigma_j), ..., xi_d prod_{j!=d}(tau+sigma_j))
    Cplx prod_all = 1.0;
    for (int j = 0; j < d; ++j) prod_all *= tau + sigma[j];
    Eigen::MatrixXcd sub = prod_all * Eigen::MatrixXcd::Identity(N, N);
    for (int l = 0; l < d; ++l) {
        Cplx prod_others = 1.0;
        for (int j = 0; j < d; ++j)
            if (j != l) prod_others *= tau + sigma[j];
        sub += xi[l] * prod_others * sys.a[l];
    }
    const Cplx rhs = sub.determinant();
    double res = rel_residual(lhs, rhs);

    if (sigma.isZero(0.0)) {
        // principal-part identity: det = tau^{N(d-1)} det L(tau, xi)
        const Cplx principal = std::pow(tau, N * (d - 1)) * sys.symbol(tau, xi).determinant();
        res = std::max(res, rel_residual(lhs, principal));
    }
    return res;
}

Eigen::VectorXcd berenger_symbol_roots(const HyperbolicSystem& sys,
                                       const Eigen::VectorXd& xi,
                                       const Eigen::VectorXd& sigma) {
    // det(tau I + K) = 0 with K the frozen generator, so the roots are the
    // eigenvalues of -K.
    const Eigen::MatrixXcd k = doubled_symbol(sys, 0.0, xi, sigma);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(-k);
    return es.eigenvalues();
}

Cplx spml_symbol_det(Cplx tau, const Eigen::VectorXd& xi, const Eigen::VectorXd& sigma) {
    if (xi.size() != sigma.size())
        throw std::invalid_argument("spml_symbol_det: xi/sigma dimension mismatch");
    for (int j = 0; j < sigma.size(); ++j)
        if (std::abs(tau + sigma[j]) == 0.0)
            throw std::domain_error("spml_symbol_det: tau + sigma_j must be nonzero");
    Cplx out = tau * tau;
    for (int j = 0; j < xi.size(); ++j) {
        const Cplx den = tau + sigma[j];
        out -= xi[j] * xi[j] * tau * tau / (den * den);
    }
    return out;
}

DispersionModel DispersionModel::isotropic(int d) {
    return {Eigen::MatrixXd::Identity(d, d)};
}

DispersionModel DispersionModel::from_form(const Eigen::MatrixXd& q) {
    if (q.rows() != q.cols()) throw std::invalid_argument("DispersionModel: Q must be square");
    if ((q - q.transpose()).norm() > 1e-12 * (1.0 + q.norm()))
        throw std::invalid_argument("DispersionModel: Q must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("DispersionModel: Q must be positive definite");
    return {q};
}

DispersionModel DispersionModel::rotated(double angle_rad, double ev1, double ev2) {
    Eigen::Matrix2d r;
    r << std::cos(angle_rad), -std::sin(angle_rad), std::sin(angle_rad), std::cos(angle_rad);
    Eigen::Matrix2d d = Eigen::Vector2d(ev1, ev2).asDiagonal();
    return from_form(r * d * r.transpose());
}

double DispersionModel::tau(const Eigen::VectorXd& xi) const {
    return std::sqrt(xi.dot(q * xi));
}

Eigen::VectorXd group_velocity(const DispersionModel& m, const Eigen::VectorXd& xi) {
    if (xi.norm() == 0.0) throw std::domain_error("group_velocity: xi must be nonzero");
    return -(m.q * xi) / m.tau(xi);
}

double beta(const DispersionModel& m, const Eigen::VectorXd& sigma,
            const Eigen::VectorXd& xi) {
    if (xi.norm() == 0.0) throw std::domain_error("beta: xi must be nonzero");
    const double t = m.tau(xi);
    const Eigen::VectorXd grad = (m.q * xi) / t;  // d tau / d xi
    double out = 0.0;
    for (int l = 0; l < xi.size(); ++l) out += sigma[l] * xi[l] * grad[l] / t;
    return out;
}

std::vector<DirectionLabel> amplification_map(const DispersionModel& m,
                                              const Eigen::VectorXd& sigma,
                                              int n_dirs, double tol) {
    if (m.q.rows() != 2) throw std::invalid_argument("amplification_map: 2-D models only");
    if (n_dirs < 360) throw std::invalid_argument("amplification_map: need >= 360 directions");
    std::vector<DirectionLabel> out;
    out.reserve(n_dirs);
    for (int n = 0; n < n_dirs; ++n) {
        const double th = 2.0 * std::numbers::pi * n / n_dirs;
        Eigen::Vector2d xi(std::cos(th), std::sin(th));
        DirectionLabel lab;
        lab.angle_rad = th;
        lab.v1 = group_velocity(m, xi)[0];
        lab.beta = beta(m, sigma, xi);
        if (lab.v1 <= 0.0)
            lab.cls = DirectionLabel::Class::incoming;
        else if (lab.beta < -tol)
            lab.cls = DirectionLabel::Class::amplified;
        else if (lab.beta <= tol)
            lab.cls = DirectionLabel::Class::boundary;
        else
            lab.cls = DirectionLabel::Class::outgoing;
        out.push_back(lab);
    }
    return out;
}

Cplx smart_reflection_coefficient(double tau, const Eigen::VectorXd& xi, double mu, double nu) {
    const double xi1 = xi[0];
    const double cone = tau * tau - xi.squaredNorm();
    if (std::abs(cone) > 1e-9 * std::max(1.0, tau * tau))
        throw std::domain_error("smart_reflection_coefficient: (tau, xi) is off the light cone");
    if (xi1 == 0.0 || tau == 0.0)
        throw std::domain_error("smart_reflection_coefficient: need xi1 != 0 and tau != 0");
    const double val = mu * (1.0 + nu) * (xi1 * xi1 - tau * tau) / (8.0 * tau * xi1 * xi1);
    return {0.0, val};
}

}  // namespace layerlab
