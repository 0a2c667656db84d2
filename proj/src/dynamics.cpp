#include "mscluster/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "mscluster/errors.hpp"

namespace mscluster {

DiffusionOperators diffusion_operators(const Graph& g) {
    const int n = g.num_nodes();
    if (n < 1)
        throw data_error("empty graph");
    for (int i = 0; i < n; ++i)
        if (g.degree(i) == 0)
            throw data_error("node " + std::to_string(i) + " is isolated; the random walk is degenerate");
    const int components = g.num_components();
    if (components != 1)
        throw data_error("graph has " + std::to_string(components) +
                         " components; repair with ensure_connected first");

    DiffusionOperators ops;
    ops.two_m = 2.0 * static_cast<double>(g.num_edges());
    ops.pi.resize(n);
    Eigen::VectorXd inv_sqrt_d(n), sqrt_d(n);
    for (int i = 0; i < n; ++i) {
        const double di = static_cast<double>(g.degree(i));
        ops.pi(i) = di / ops.two_m;
        sqrt_d(i) = std::sqrt(di);
        inv_sqrt_d(i) = 1.0 / sqrt_d(i);
    }

    ops.M = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double inv_di = 1.0 / static_cast<double>(g.degree(i));
        for (int j : g.neighbors(i)) {
            ops.M(i, j) = inv_di;
            s(i, j) = inv_sqrt_d(i) * inv_sqrt_d(j);
        }
    }
    // Exact symmetry of the normalized adjacency before the eigensolve.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            s(i, j) = s(j, i);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.info() != Eigen::Success)
        throw numeric_error("eigendecomposition of the normalized adjacency failed");
    ops.eigenvalues = es.eigenvalues();
    ops.U = inv_sqrt_d.asDiagonal() * es.eigenvectors();
    ops.W = sqrt_d.asDiagonal() * es.eigenvectors();
    return ops;
}

namespace {

Eigen::VectorXd decay_factors(const DiffusionOperators& ops, double t) {
    if (!std::isfinite(t) || t < 0.0)
        throw config_error("Markov time must be finite and non-negative, got " +
                           std::to_string(t));
    return (-t * (1.0 - ops.eigenvalues.array())).exp().matrix();
}

} // namespace

Eigen::MatrixXd autocovariance_matrix(const DiffusionOperators& ops, double t) {
    const Eigen::VectorXd e = decay_factors(ops, t);
    const int n = ops.n();
    // Pi P(t) = W E W^T / 2m is symmetric; build it from a half-rank update
    // and mirror so B is symmetric to the bit.
    const Eigen::MatrixXd z = ops.W * e.cwiseSqrt().asDiagonal();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    b.selfadjointView<Eigen::Lower>().rankUpdate(z, 1.0 / ops.two_m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = b(i, j) - ops.pi(i) * ops.pi(j);
            b(i, j) = v;
            b(j, i) = v;
        }
    return b;
}

Autocovariance transition_at_time(const DiffusionOperators& ops, double t) {
    Autocovariance ac;
    ac.t = t;
    ac.B = autocovariance_matrix(ops, t);

    const Eigen::VectorXd e = decay_factors(ops, t);
    ac.P.noalias() = (ops.U * e.asDiagonal()) * ops.W.transpose();
    const int n = ops.n();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = ac.P(i, j);
            if (v < 0.0) {
                if (v < -1e-12)
                    throw numeric_error("transition matrix entry " + std::to_string(v) +
                                        " below the -1e-12 floor at t=" + std::to_string(t));
                ac.P(i, j) = 0.0;
            }
        }
        const double row_sum = ac.P.row(i).sum();
        if (!(row_sum > 0.0))
            throw numeric_error("transition matrix row " + std::to_string(i) +
                                " sums to zero at t=" + std::to_string(t));
        ac.P.row(i) /= row_sum;
    }
    return ac;
}

Eigen::MatrixXd expm_scaling_squaring(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols())
        throw data_error("matrix exponential of a non-square matrix");
    const int n = static_cast<int>(a.rows());
    double norm = 0.0;
    for (int i = 0; i < n; ++i)
        norm = std::max(norm, a.row(i).cwiseAbs().sum());
    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) {
        scaled *= 0.5;
        ++squarings;
    }
    const Eigen::MatrixXd t = a / std::pow(2.0, squarings);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= 24; ++k) {
        term = (term * t) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-300)
            break;
    }
    for (int s = 0; s < squarings; ++s)
        sum = sum * sum;
    return sum;
}

} // namespace mscluster
