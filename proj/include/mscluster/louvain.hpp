#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mscluster/dynamics.hpp"
#include "mscluster/graph.hpp"
#include "mscluster/partition.hpp"
#include "mscluster/rng.hpp"
#include "mscluster/scan_result.hpp"

namespace mscluster {

// Markov Stability of a partition: sum of B(t) entries within groups.
double markov_stability(const Eigen::MatrixXd& b, const Partition& p);
double markov_stability(const Autocovariance& b, const Partition& p);

struct OptimizationOutcome {
    Partition partition;
    double score = 0.0;
    double t = 0.0;
    int run_index = 0;
    std::uint64_t seed = 0;
};

// One greedy two-phase Louvain run maximizing Markov Stability over the
// node-pair gain matrix B(t). Candidate moves are restricted to communities
// of graph-adjacent nodes; ties go to the lowest community index.
// Deterministic given the seed.
OptimizationOutcome louvain_optimize(const Autocovariance& b, const Graph& g, std::uint64_t seed);

// Full time scan: at each grid time, n_louvain independent runs with seeds
// derive_seed(seed, {t_index, run_index}); records the best partition, all
// runs, the per-time dispersion VI(t) and the VI(t,t') matrix. Runs execute
// in parallel; results are identical for any thread count.
ScanResult scan(const Graph& g, const std::vector<double>& t_grid, int n_louvain,
                std::uint64_t seed, int threads = 0);

namespace detail {

// Sweep-order source, injectable so tests can drive or transform the
// node-visit randomization.
class SweepOrder {
public:
    virtual ~SweepOrder() = default;
    virtual std::vector<int> permutation(int n) = 0;
};

class RngSweepOrder : public SweepOrder {
public:
    explicit RngSweepOrder(std::uint64_t seed) : rng_(seed) {}
    std::vector<int> permutation(int n) override { return rng_.permutation(n); }

private:
    Rng rng_;
};

struct LouvainRun {
    std::vector<int> assignment; // canonical
    double score = 0.0;
};

// Multi-level run on an explicit gain matrix and candidate adjacency.
LouvainRun louvain_run(const Eigen::MatrixXd& b, const std::vector<std::vector<int>>& adjacency,
                       SweepOrder& order);

// Community-block sums of b under the assignment (c groups). The trace of
// the aggregate equals the Markov Stability of the assignment on b.
Eigen::MatrixXd aggregate_matrix(const Eigen::MatrixXd& b, const std::vector<int>& assignment,
                                 int c);

std::vector<std::vector<int>> aggregate_adjacency(const std::vector<std::vector<int>>& adjacency,
                                                  const std::vector<int>& assignment, int c);

} // namespace detail

} // namespace mscluster
