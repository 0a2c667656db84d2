#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mscluster/partition.hpp"

namespace mscluster {

// Everything recorded by a Markov-time scan: per-time optima and scores,
// optimizer dispersion VI(t), every individual run, and the cross-time
// VI(t,t') matrix.
struct ScanResult {
    std::vector<double> t_grid;
    std::vector<Partition> optima;                      // g*(t)
    std::vector<double> scores;                         // r*(t)
    std::vector<double> dispersion;                     // VI(t)
    std::vector<std::vector<Partition>> all_partitions; // [t][run]
    std::vector<std::vector<double>> all_scores;        // [t][run]
    Eigen::MatrixXd vi_tt;                              // VI(g*(t), g*(t'))

    int n_nodes = 0;
    int n_times = 0;
    int n_louvain = 0;
    std::uint64_t seed = 0;

    void validate() const; // throws data_error on inconsistent shape
};

// Log-spaced grid of n points in [t_min, t_max].
std::vector<double> log_time_grid(double t_min, double t_max, int n);

} // namespace mscluster
