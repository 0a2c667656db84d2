#pragma once

#include <Eigen/Dense>

#include "mscluster/graph.hpp"

namespace mscluster {

// Continuous-time random walk operators of a connected graph, plus the
// spectral factorization of the symmetrized generator. One O(n^3)
// eigendecomposition here amortizes P(t)/B(t) evaluation over a whole
// Markov-time grid.
struct DiffusionOperators {
    Eigen::MatrixXd M;           // one-step transition matrix D^{-1} A
    Eigen::VectorXd pi;          // stationary distribution d / 2m
    Eigen::VectorXd eigenvalues; // of D^{-1/2} A D^{-1/2}, in [-1, 1]
    Eigen::MatrixXd U;           // D^{-1/2} V, V orthonormal eigenvectors
    Eigen::MatrixXd W;           // D^{+1/2} V; Pi P(t) = W E(t) W^T / 2m
    double two_m = 0.0;

    int n() const { return static_cast<int>(pi.size()); }
};

// Time-t transition matrix and walker autocovariance.
struct Autocovariance {
    double t = 0.0;
    Eigen::MatrixXd B; // Pi P(t) - pi^T pi, symmetric
    Eigen::MatrixXd P; // exp(-t (I - M)), row-stochastic
};

// Throws data_error for graphs with isolated nodes or more than one
// component (repair with ensure_connected first).
DiffusionOperators diffusion_operators(const Graph& g);

// P(t) and B(t) from the stored spectral factorization. Negative P entries
// above -1e-12 are clipped to zero and rows renormalized; anything more
// negative is a numeric_error. t must be finite and >= 0.
Autocovariance transition_at_time(const DiffusionOperators& ops, double t);

// B(t) alone; skips materializing P for scan loops.
Eigen::MatrixXd autocovariance_matrix(const DiffusionOperators& ops, double t);

// Dense matrix exponential by scaling and squaring (Taylor on the scaled
// matrix). Independent of the spectral route; used for cross-checks.
Eigen::MatrixXd expm_scaling_squaring(const Eigen::MatrixXd& a);

} // namespace mscluster
