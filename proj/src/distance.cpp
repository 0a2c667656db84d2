#include "mscluster/distance.hpp"

#include <algorithm>
#include <string>

#include "mscluster/errors.hpp"
#include "mscluster/parallel.hpp"

namespace mscluster {

void DistanceMatrix::validate() const {
    if (values.rows() != values.cols())
        throw data_error("distance matrix is not square");
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        if (values(i, i) != 0.0)
            throw data_error("distance matrix has nonzero diagonal at " + std::to_string(i));
        for (Eigen::Index j = i + 1; j < values.cols(); ++j) {
            if (values(i, j) != values(j, i))
                throw data_error("distance matrix asymmetric at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
            if (values(i, j) < 0.0)
                throw data_error("negative distance at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
        }
    }
}

DistanceMatrix pairwise_distances(const Dataset& ds, int threads) {
    ds.validate();
    const int n = ds.n();
    DistanceMatrix dm;
    dm.metric_name = "euclidean";
    dm.values.resize(n, n);
    const auto& x = ds.samples;
    // Each row is filled by exactly one worker; the mirror copy below reads
    // the finished upper triangle.
    parallel_for(0, n, threads, [&](int i) {
        dm.values(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j)
            dm.values(i, j) = (x.row(i) - x.row(j)).norm();
    });
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            dm.values(i, j) = dm.values(j, i);
    return dm;
}

NeighborProfile kth_neighbor_distances(const DistanceMatrix& dm, int k) {
    const int n = dm.n();
    if (k < 1 || k >= n)
        throw config_error("neighbour index k=" + std::to_string(k) +
                           " must satisfy 1 <= k <= n-1 with n=" + std::to_string(n));
    NeighborProfile np;
    np.k = k;
    np.dk.resize(n);
    std::vector<double> row(n - 1);
    for (int i = 0; i < n; ++i) {
        int c = 0;
        for (int j = 0; j < n; ++j)
            if (j != i)
                row[c++] = dm.values(i, j);
        std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
        np.dk[i] = row[k - 1];
    }
    return np;
}

} // namespace mscluster
