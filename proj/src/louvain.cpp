#include "mscluster/louvain.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

#include "mscluster/errors.hpp"
#include "mscluster/metrics.hpp"
#include "mscluster/parallel.hpp"

namespace mscluster {

double markov_stability(const Eigen::MatrixXd& b, const Partition& p) {
    const int n = static_cast<int>(b.rows());
    if (p.size() != n)
        throw data_error("partition covers " + std::to_string(p.size()) + " nodes, matrix has " +
                         std::to_string(n));
    const auto& asg = p.assignment();
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const int cj = asg[j];
        for (int i = 0; i < n; ++i)
            if (asg[i] == cj)
                acc += b(i, j);
    }
    return acc;
}

double markov_stability(const Autocovariance& b, const Partition& p) {
    return markov_stability(b.B, p);
}

namespace detail {

Eigen::MatrixXd aggregate_matrix(const Eigen::MatrixXd& b, const std::vector<int>& assignment,
                                 int c) {
    const int n = static_cast<int>(b.rows());
    Eigen::MatrixXd agg = Eigen::MatrixXd::Zero(c, c);
    for (int j = 0; j < n; ++j) {
        const int cj = assignment[j];
        for (int i = 0; i < n; ++i)
            agg(assignment[i], cj) += b(i, j);
    }
    return agg;
}

std::vector<std::vector<int>> aggregate_adjacency(const std::vector<std::vector<int>>& adjacency,
                                                  const std::vector<int>& assignment, int c) {
    std::vector<std::vector<int>> agg(c);
    const int n = static_cast<int>(adjacency.size());
    for (int v = 0; v < n; ++v) {
        const int cv = assignment[v];
        for (int u : adjacency[v]) {
            const int cu = assignment[u];
            if (cu != cv)
                agg[cv].push_back(cu);
        }
    }
    for (auto& nbrs : agg) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return agg;
}

namespace {

// Dense relabel by first appearance; returns the group count.
int relabel(std::vector<int>& assignment) {
    std::vector<int> map(assignment.size(), -1);
    int next = 0;
    for (int& a : assignment) {
        if (map[a] == -1)
            map[a] = next++;
        a = map[a];
    }
    return next;
}

// Phase 1: sweep nodes in randomized order, moving each to the adjacent
// community with the largest strictly positive stability gain, until a full
// sweep makes no move. Returns whether anything moved.
bool local_moves(const Eigen::MatrixXd& b, const std::vector<std::vector<int>>& adjacency,
                 std::vector<int>& comm, SweepOrder& order) {
    const int n = static_cast<int>(b.rows());
    std::vector<double> comm_sum(n);
    bool any = false;
    for (;;) {
        bool moved = false;
        const std::vector<int> sweep = order.permutation(n);
        for (int idx = 0; idx < n; ++idx) {
            const int v = sweep[idx];
            std::fill(comm_sum.begin(), comm_sum.end(), 0.0);
            // b is symmetric; walk column v for contiguous access.
            for (int j = 0; j < n; ++j)
                comm_sum[comm[j]] += b(j, v);
            const int a = comm[v];
            // Link mass to the current community once v itself is removed.
            const double detach = comm_sum[a] - b(v, v);
            double best_gain = 0.0;
            int best_comm = a;
            for (int u : adjacency[v]) {
                const int cu = comm[u];
                if (cu == a)
                    continue;
                const double gain = 2.0 * (comm_sum[cu] - detach);
                if (gain > best_gain || (gain == best_gain && best_gain > 0.0 && cu < best_comm)) {
                    best_gain = gain;
                    best_comm = cu;
                }
            }
            if (best_comm != a) {
                comm[v] = best_comm;
                moved = true;
                any = true;
            }
        }
        if (!moved)
            break;
    }
    return any;
}

} // namespace

LouvainRun louvain_run(const Eigen::MatrixXd& b, const std::vector<std::vector<int>>& adjacency,
                       SweepOrder& order) {
    const int n0 = static_cast<int>(b.rows());
    std::vector<int> node_comm(n0);
    std::iota(node_comm.begin(), node_comm.end(), 0);

    Eigen::MatrixXd level_b = b;
    std::vector<std::vector<int>> level_adj = adjacency;
    for (;;) {
        const int n = static_cast<int>(level_b.rows());
        std::vector<int> comm(n);
        std::iota(comm.begin(), comm.end(), 0);
        const bool improved = local_moves(level_b, level_adj, comm, order);
        if (!improved)
            break;
        const int c = relabel(comm);
        for (int& a : node_comm)
            a = comm[a];
        if (c == n)
            break;
        level_b = aggregate_matrix(level_b, comm, c);
        level_adj = aggregate_adjacency(level_adj, comm, c);
    }

    LouvainRun out;
    out.assignment = std::move(node_comm);
    relabel(out.assignment);
    out.score = markov_stability(b, Partition::from_assignment(out.assignment));
    return out;
}

} // namespace detail

OptimizationOutcome louvain_optimize(const Autocovariance& b, const Graph& g, std::uint64_t seed) {
    if (g.num_nodes() != b.B.rows())
        throw data_error("graph and autocovariance node counts differ");
    std::vector<std::vector<int>> adjacency(g.num_nodes());
    for (int i = 0; i < g.num_nodes(); ++i)
        adjacency[i] = g.neighbors(i);
    detail::RngSweepOrder order(seed);
    detail::LouvainRun run = detail::louvain_run(b.B, adjacency, order);
    OptimizationOutcome out;
    out.partition = Partition::from_assignment(run.assignment);
    out.score = run.score;
    out.t = b.t;
    out.seed = seed;
    return out;
}

ScanResult scan(const Graph& g, const std::vector<double>& t_grid, int n_louvain,
                std::uint64_t seed, int threads) {
    if (t_grid.empty())
        throw config_error("empty Markov time grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i]))
            throw config_error("scan times must be positive and finite");
        if (i > 0 && t_grid[i] <= t_grid[i - 1])
            throw config_error("scan times must be strictly ascending");
    }
    if (n_louvain < 1)
        throw config_error("number of Louvain runs must be >= 1");

    const DiffusionOperators ops = diffusion_operators(g);
    const int n = g.num_nodes();
    const int n_t = static_cast<int>(t_grid.size());

    std::vector<std::vector<int>> adjacency(n);
    for (int i = 0; i < n; ++i)
        adjacency[i] = g.neighbors(i);

    ScanResult sr;
    sr.t_grid = t_grid;
    sr.n_nodes = n;
    sr.n_times = n_t;
    sr.n_louvain = n_louvain;
    sr.seed = seed;
    sr.optima.resize(n_t);
    sr.scores.resize(n_t);
    sr.dispersion.resize(n_t);
    sr.all_partitions.assign(n_t, std::vector<Partition>(n_louvain));
    sr.all_scores.assign(n_t, std::vector<double>(n_louvain, 0.0));

    for (int ti = 0; ti < n_t; ++ti) {
        const Eigen::MatrixXd b = autocovariance_matrix(ops, t_grid[ti]);
        auto& partitions = sr.all_partitions[ti];
        auto& scores = sr.all_scores[ti];
        parallel_for(0, n_louvain, threads, [&](int run) {
            const std::uint64_t run_seed = derive_seed(
                seed, {static_cast<std::uint64_t>(ti), static_cast<std::uint64_t>(run)});
            detail::RngSweepOrder order(run_seed);
            detail::LouvainRun lr = detail::louvain_run(b, adjacency, order);
            partitions[run] = Partition::from_assignment(lr.assignment);
            scores[run] = lr.score;
        });
        // Best run; ties resolved by the lowest run index so the outcome is
        // independent of scheduling.
        int best = 0;
        for (int run = 1; run < n_louvain; ++run)
            if (scores[run] > scores[best])
                best = run;
        sr.optima[ti] = partitions[best];
        sr.scores[ti] = scores[best];
        sr.dispersion[ti] = avg_vi(partitions);
    }
    sr.vi_tt = vi_matrix(sr.optima);
    return sr;
}

} // namespace mscluster
