#include <doctest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"

#include "mscluster/dynamics.hpp"
#include "mscluster/errors.hpp"

using namespace mscluster;

TEST_SUITE("dynamics") {

TEST_CASE("triangle graph operators") {
    const auto g = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto ops = diffusion_operators(g);
    for (int i = 0; i < 3; ++i) {
        CHECK(ops.pi(i) == doctest::Approx(1.0 / 3).epsilon(1e-15));
        for (int j = 0; j < 3; ++j)
            CHECK(ops.M(i, j) == doctest::Approx(i == j ? 0.0 : 0.5).epsilon(1e-15));
    }
}

TEST_CASE("star graph stationary distribution is degree proportional") {
    const auto g = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    const auto ops = diffusion_operators(g);
    CHECK(ops.pi(0) == doctest::Approx(0.5).epsilon(1e-15));
    for (int leaf = 1; leaf < 4; ++leaf)
        CHECK(ops.pi(leaf) == doctest::Approx(1.0 / 6).epsilon(1e-15));
}

TEST_CASE("pi is the fixed point of M on random connected graphs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto g = fixtures::random_connected_graph(15, 1.5, seed);
        const auto ops = diffusion_operators(g);
        const Eigen::RowVectorXd res = ops.pi.transpose() * ops.M - ops.pi.transpose();
        CHECK(res.cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(std::abs(ops.pi.sum() - 1.0) <= 1e-12);
        for (Eigen::Index i = 0; i < ops.M.rows(); ++i)
            CHECK(std::abs(ops.M.row(i).sum() - 1.0) <= 1e-10);
    }
}

TEST_CASE("degenerate graphs are rejected") {
    Graph isolated(3);
    CHECK_THROWS_AS(diffusion_operators(isolated), data_error);
    const auto disconnected = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(diffusion_operators(disconnected), data_error);
}

TEST_CASE("t=0 gives the identity and B(0) = Pi - pi pi^T") {
    const auto g = fixtures::random_connected_graph(8, 1.0, 3);
    const auto ops = diffusion_operators(g);
    const auto ac = transition_at_time(ops, 0.0);
    CHECK((ac.P - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-10);
    Eigen::MatrixXd expected = -ops.pi * ops.pi.transpose();
    expected.diagonal() += ops.pi;
    CHECK((ac.B - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("long-time limit approaches the stationary distribution") {
    const auto g = fixtures::random_connected_graph(10, 1.0, 9);
    const auto ops = diffusion_operators(g);
    const auto ac = transition_at_time(ops, 1e6);
    for (int i = 0; i < 10; ++i)
        CHECK((ac.P.row(i).transpose() - ops.pi).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("two-node closed form at t=1") {
    const auto g = Graph::from_edges(2, {{0, 1}});
    const auto ops = diffusion_operators(g);
    const auto ac = transition_at_time(ops, 1.0);
    const double diag = (1.0 + std::exp(-2.0)) / 2.0;
    const double off = (1.0 - std::exp(-2.0)) / 2.0;
    CHECK(ac.P(0, 0) == doctest::Approx(diag).epsilon(1e-12));
    CHECK(ac.P(1, 1) == doctest::Approx(diag).epsilon(1e-12));
    CHECK(ac.P(0, 1) == doctest::Approx(off).epsilon(1e-12));
    CHECK(ac.P(1, 0) == doctest::Approx(off).epsilon(1e-12));
}

TEST_CASE("autocovariance invariants on random graphs") {
    for (std::uint64_t seed = 11; seed <= 15; ++seed) {
        const auto g = fixtures::random_connected_graph(12, 1.2, seed);
        const auto ops = diffusion_operators(g);
        for (double t : {0.1, 1.0, 10.0, 250.0}) {
            const auto ac = transition_at_time(ops, t);
            CHECK(std::abs(ac.B.sum()) <= 1e-9);
            CHECK((ac.B - ac.B.transpose()).cwiseAbs().maxCoeff() == 0.0);
            for (Eigen::Index i = 0; i < 12; ++i) {
                CHECK(std::abs(ac.P.row(i).sum() - 1.0) <= 1e-10);
                CHECK(ac.P.row(i).minCoeff() >= 0.0);
            }
            // B derives from Pi P - pi pi^T.
            const Eigen::MatrixXd recon =
                ops.pi.asDiagonal() * ac.P - ops.pi * ops.pi.transpose();
            CHECK((ac.B - recon).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("semigroup property P(a)P(b) = P(a+b)") {
    for (std::uint64_t seed = 21; seed <= 23; ++seed) {
        const auto g = fixtures::random_connected_graph(9, 1.0, seed);
        const auto ops = diffusion_operators(g);
        const auto p1 = transition_at_time(ops, 0.7).P;
        const auto p2 = transition_at_time(ops, 1.9).P;
        const auto p3 = transition_at_time(ops, 2.6).P;
        CHECK((p1 * p2 - p3).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("trace of B(t) decays with t") {
    const auto g = fixtures::random_connected_graph(14, 1.0, 31);
    const auto ops = diffusion_operators(g);
    double previous = std::numeric_limits<double>::infinity();
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0}) {
        const double trace = autocovariance_matrix(ops, t).trace();
        CHECK(trace <= previous + 1e-12);
        CHECK(trace >= -1e-12);
        previous = trace;
    }
}

TEST_CASE("spectral route agrees with scaling-and-squaring") {
    for (std::uint64_t seed = 41; seed <= 43; ++seed) {
        const auto g = fixtures::random_connected_graph(11, 1.3, seed);
        const auto ops = diffusion_operators(g);
        const int n = ops.n();
        for (double t : {0.5, 3.0, 40.0}) {
            const Eigen::MatrixXd direct =
                expm_scaling_squaring(-t * (Eigen::MatrixXd::Identity(n, n) - ops.M));
            CHECK((transition_at_time(ops, t).P - direct).cwiseAbs().maxCoeff() <= 1e-8);
        }
    }
}

TEST_CASE("invalid times are rejected") {
    const auto g = Graph::from_edges(2, {{0, 1}});
    const auto ops = diffusion_operators(g);
    CHECK_THROWS_AS(transition_at_time(ops, -1.0), config_error);
    CHECK_THROWS_AS(transition_at_time(ops, std::numeric_limits<double>::quiet_NaN()),
                    config_error);
    CHECK_THROWS_AS(transition_at_time(ops, std::numeric_limits<double>::infinity()),
                    config_error);
}

} // TEST_SUITE
