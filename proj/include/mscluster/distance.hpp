#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mscluster/dataset.hpp"

namespace mscluster {

// Symmetric n x n matrix of pairwise dissimilarities with zero diagonal.
struct DistanceMatrix {
    Eigen::MatrixXd values;
    std::string metric_name;

    int n() const { return static_cast<int>(values.rows()); }
    void validate() const; // throws data_error on asymmetry / negative entries
};

// Per-node distance to the k-th nearest neighbour, self excluded.
struct NeighborProfile {
    int k = 0;
    std::vector<double> dk;
};

// Euclidean distances between all sample pairs. Parallelized over row
// blocks; output independent of thread count.
DistanceMatrix pairwise_distances(const Dataset& ds, int threads = 0);

// dk[i] = k-th smallest off-diagonal entry of row i (ties share rank by
// sorted order). Requires 1 <= k <= n-1.
NeighborProfile kth_neighbor_distances(const DistanceMatrix& dm, int k);

} // namespace mscluster
