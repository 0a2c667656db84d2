#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mscluster/partition.hpp"

namespace mscluster {

// Co-occurrence counts n_uv between the groups of two partitions.
struct ContingencyTable {
    int n = 0;
    int rows = 0, cols = 0;
    std::vector<std::int64_t> counts;    // rows x cols, row-major
    std::vector<std::int64_t> row_sums;  // group sizes of p1
    std::vector<std::int64_t> col_sums;  // group sizes of p2

    static ContingencyTable build(const Partition& p1, const Partition& p2);

    std::int64_t at(int u, int v) const { return counts[static_cast<std::size_t>(u) * cols + v]; }
};

// Variation of information, natural log: H1 + H2 - 2I. Zero iff the
// partitions are identical up to relabeling.
double variation_of_information(const Partition& p1, const Partition& p2);

// Normalized mutual information I / sqrt(H1 H2); 1 when both entropies are
// zero, 0 when exactly one is.
double nmi(const Partition& p1, const Partition& p2);

// Hubert-Arabie adjusted Rand index.
double ari(const Partition& p1, const Partition& p2);

// Fraction of samples in the majority truth class of their predicted cluster.
double purity(const Partition& pred, const Partition& truth);

// Mean pairwise VI over ordered pairs of the given partitions, normalized by
// L(L-1). Returns 0 for a single partition; empty input is a data_error.
double avg_vi(const std::vector<Partition>& partitions);

// Symmetric matrix of pairwise VI values, zero diagonal.
Eigen::MatrixXd vi_matrix(const std::vector<Partition>& partitions);

} // namespace mscluster
