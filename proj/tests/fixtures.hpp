#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "mscluster/dataset.hpp"
#include "mscluster/graph.hpp"
#include "mscluster/rng.hpp"

namespace fixtures {

inline mscluster::Dataset from_matrix(Eigen::MatrixXd samples, std::string name = "fixture") {
    mscluster::Dataset ds;
    ds.name = std::move(name);
    ds.samples = std::move(samples);
    return ds;
}

inline mscluster::Dataset points_1d(const std::vector<double>& xs) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), 1);
    for (std::size_t i = 0; i < xs.size(); ++i)
        m(static_cast<Eigen::Index>(i), 0) = xs[i];
    return from_matrix(std::move(m), "line");
}

inline mscluster::Dataset random_points(int n, int d, std::uint64_t seed) {
    mscluster::Rng rng(seed);
    Eigen::MatrixXd m(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = rng.next_gaussian();
    return from_matrix(std::move(m), "random");
}

// Two well-separated Gaussian blobs, half the points in each.
inline mscluster::Dataset two_blobs(int n, std::uint64_t seed, double separation = 10.0) {
    mscluster::Rng rng(seed);
    Eigen::MatrixXd m(n, 2);
    for (int i = 0; i < n; ++i) {
        const double cx = i < n / 2 ? 0.0 : separation;
        m(i, 0) = cx + 0.5 * rng.next_gaussian();
        m(i, 1) = 0.5 * rng.next_gaussian();
    }
    return from_matrix(std::move(m), "two_blobs");
}

// Noisy circle sampled on three arcs plus a blob at the centre: four groups
// with geometric structure.
inline mscluster::Dataset circle_with_center(int per_group, std::uint64_t seed) {
    mscluster::Rng rng(seed);
    Eigen::MatrixXd m(4 * per_group, 2);
    int row = 0;
    for (int arc = 0; arc < 3; ++arc) {
        const double base = 2.0 * M_PI * arc / 3.0;
        for (int i = 0; i < per_group; ++i) {
            const double angle = base + 1.6 * (rng.next_unit() - 0.5);
            const double radius = 10.0 + 0.4 * rng.next_gaussian();
            m(row, 0) = radius * std::cos(angle);
            m(row, 1) = radius * std::sin(angle);
            ++row;
        }
    }
    for (int i = 0; i < per_group; ++i) {
        m(row, 0) = 0.8 * rng.next_gaussian();
        m(row, 1) = 0.8 * rng.next_gaussian();
        ++row;
    }
    return from_matrix(std::move(m), "circle_center");
}

// Nine blobs whose centres sit at the corners of three far-apart triangles:
// a fine scale of 9 groups nested in a coarse scale of 3.
struct TriadData {
    mscluster::Dataset dataset;
    std::vector<int> blob_label;  // 9 classes
    std::vector<int> triad_label; // 3 classes
};

inline TriadData triad_blobs(int per_blob, std::uint64_t seed) {
    mscluster::Rng rng(seed);
    TriadData out;
    Eigen::MatrixXd m(9 * per_blob, 2);
    int row = 0;
    for (int triad = 0; triad < 3; ++triad) {
        const double a = 2.0 * M_PI * triad / 3.0;
        const double tx = 40.0 * std::cos(a), ty = 40.0 * std::sin(a);
        for (int blob = 0; blob < 3; ++blob) {
            const double b = 2.0 * M_PI * blob / 3.0 + 0.5;
            const double bx = tx + 6.0 * std::cos(b), by = ty + 6.0 * std::sin(b);
            for (int i = 0; i < per_blob; ++i) {
                m(row, 0) = bx + 0.9 * rng.next_gaussian();
                m(row, 1) = by + 0.9 * rng.next_gaussian();
                out.blob_label.push_back(3 * triad + blob);
                out.triad_label.push_back(triad);
                ++row;
            }
        }
    }
    out.dataset = from_matrix(std::move(m), "triads");
    return out;
}

// Connected random graph: a random spanning tree plus extra random edges.
inline mscluster::Graph random_connected_graph(int n, double extra_edge_fraction,
                                               std::uint64_t seed) {
    mscluster::Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(rng.next_int(v), v);
    const int extras = static_cast<int>(extra_edge_fraction * n) + 1;
    for (int e = 0; e < extras; ++e) {
        const int i = rng.next_int(n);
        const int j = rng.next_int(n);
        if (i != j)
            edges.emplace_back(std::min(i, j), std::max(i, j));
    }
    return mscluster::Graph::from_edges(n, edges);
}

// Two k-cliques joined by a single bridge edge.
inline mscluster::Graph two_cliques(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            edges.emplace_back(i, j);
            edges.emplace_back(k + i, k + j);
        }
    edges.emplace_back(k - 1, k);
    return mscluster::Graph::from_edges(2 * k, edges);
}

} // namespace fixtures
