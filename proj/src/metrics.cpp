#include "mscluster/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mscluster/errors.hpp"

namespace mscluster {

ContingencyTable ContingencyTable::build(const Partition& p1, const Partition& p2) {
    if (p1.size() != p2.size())
        throw data_error("partition length mismatch: " + std::to_string(p1.size()) + " vs " +
                         std::to_string(p2.size()));
    ContingencyTable ct;
    ct.n = p1.size();
    ct.rows = p1.num_groups();
    ct.cols = p2.num_groups();
    ct.counts.assign(static_cast<std::size_t>(ct.rows) * ct.cols, 0);
    ct.row_sums.assign(ct.rows, 0);
    ct.col_sums.assign(ct.cols, 0);
    const auto& a1 = p1.assignment();
    const auto& a2 = p2.assignment();
    for (int i = 0; i < ct.n; ++i) {
        ++ct.counts[static_cast<std::size_t>(a1[i]) * ct.cols + a2[i]];
        ++ct.row_sums[a1[i]];
        ++ct.col_sums[a2[i]];
    }
    return ct;
}

namespace {

// Entropy of a marginal, natural log: ln n - (1/n) sum a ln a.
double entropy(const std::vector<std::int64_t>& sizes, int n) {
    double acc = 0.0;
    for (auto a : sizes)
        if (a > 0)
            acc += static_cast<double>(a) * std::log(static_cast<double>(a));
    return std::log(static_cast<double>(n)) - acc / static_cast<double>(n);
}

double mutual_information(const ContingencyTable& ct) {
    const double n = static_cast<double>(ct.n);
    double acc = 0.0;
    for (int u = 0; u < ct.rows; ++u) {
        for (int v = 0; v < ct.cols; ++v) {
            const auto c = ct.at(u, v);
            if (c > 0)
                acc += static_cast<double>(c) *
                       std::log(n * static_cast<double>(c) /
                                (static_cast<double>(ct.row_sums[u]) *
                                 static_cast<double>(ct.col_sums[v])));
        }
    }
    return std::max(0.0, acc / n);
}

} // namespace

double variation_of_information(const Partition& p1, const Partition& p2) {
    const auto ct = ContingencyTable::build(p1, p2);
    // H1 + H2 - 2I written over joint counts only: every term of a group
    // matched to itself cancels exactly, so identical partitions give 0.0.
    double acc = 0.0;
    for (int u = 0; u < ct.rows; ++u) {
        for (int v = 0; v < ct.cols; ++v) {
            const auto c = ct.at(u, v);
            if (c > 0)
                acc += static_cast<double>(c) *
                       (std::log(static_cast<double>(ct.row_sums[u])) +
                        std::log(static_cast<double>(ct.col_sums[v])) -
                        2.0 * std::log(static_cast<double>(c)));
        }
    }
    return std::max(0.0, acc / static_cast<double>(ct.n));
}

double nmi(const Partition& p1, const Partition& p2) {
    const auto ct = ContingencyTable::build(p1, p2);
    const double h1 = entropy(ct.row_sums, ct.n);
    const double h2 = entropy(ct.col_sums, ct.n);
    if (h1 <= 0.0 && h2 <= 0.0)
        return 1.0;
    if (h1 <= 0.0 || h2 <= 0.0)
        return 0.0;
    const double value = mutual_information(ct) / std::sqrt(h1 * h2);
    return std::clamp(value, 0.0, 1.0);
}

double ari(const Partition& p1, const Partition& p2) {
    const auto ct = ContingencyTable::build(p1, p2);
    if (ct.n < 2)
        throw data_error("adjusted Rand index needs at least 2 samples");
    auto comb2 = [](double x) { return x * (x - 1.0) / 2.0; };
    double sum_cells = 0.0;
    for (auto c : ct.counts)
        sum_cells += comb2(static_cast<double>(c));
    double sum_rows = 0.0, sum_cols = 0.0;
    for (auto a : ct.row_sums)
        sum_rows += comb2(static_cast<double>(a));
    for (auto b : ct.col_sums)
        sum_cols += comb2(static_cast<double>(b));
    const double expected = sum_rows * sum_cols / comb2(static_cast<double>(ct.n));
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected)
        return 1.0; // both partitions trivial in the same way
    return (sum_cells - expected) / (max_index - expected);
}

double purity(const Partition& pred, const Partition& truth) {
    const auto ct = ContingencyTable::build(pred, truth);
    std::int64_t correct = 0;
    for (int u = 0; u < ct.rows; ++u) {
        std::int64_t best = 0;
        for (int v = 0; v < ct.cols; ++v)
            best = std::max(best, ct.at(u, v));
        correct += best;
    }
    return static_cast<double>(correct) / static_cast<double>(ct.n);
}

double avg_vi(const std::vector<Partition>& partitions) {
    if (partitions.empty())
        throw data_error("average VI over an empty partition list");
    const int l = static_cast<int>(partitions.size());
    if (l == 1)
        return 0.0;
    double acc = 0.0;
    for (int s = 0; s < l; ++s)
        for (int s2 = s + 1; s2 < l; ++s2)
            acc += 2.0 * variation_of_information(partitions[s], partitions[s2]);
    return acc / (static_cast<double>(l) * (l - 1));
}

Eigen::MatrixXd vi_matrix(const std::vector<Partition>& partitions) {
    const int l = static_cast<int>(partitions.size());
    if (l == 0)
        throw data_error("VI matrix of an empty partition list");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(l, l);
    for (int a = 0; a < l; ++a)
        for (int b = a + 1; b < l; ++b)
            m(a, b) = m(b, a) = variation_of_information(partitions[a], partitions[b]);
    return m;
}

} // namespace mscluster
