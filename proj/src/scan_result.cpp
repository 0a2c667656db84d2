#include "mscluster/scan_result.hpp"

#include <cmath>
#include <string>

#include "mscluster/errors.hpp"

namespace mscluster {

void ScanResult::validate() const {
    const std::size_t nt = t_grid.size();
    if (nt == 0)
        throw data_error("scan result has an empty time grid");
    if (optima.size() != nt || scores.size() != nt || dispersion.size() != nt ||
        all_partitions.size() != nt || all_scores.size() != nt)
        throw data_error("scan result arrays disagree with the grid length");
    if (vi_tt.rows() != static_cast<Eigen::Index>(nt) ||
        vi_tt.cols() != static_cast<Eigen::Index>(nt))
        throw data_error("VI(t,t') matrix has the wrong shape");
    for (std::size_t ti = 0; ti < nt; ++ti) {
        if (static_cast<int>(all_partitions[ti].size()) != n_louvain)
            throw data_error("run count mismatch at time index " + std::to_string(ti));
        if (optima[ti].size() != n_nodes)
            throw data_error("optimum size mismatch at time index " + std::to_string(ti));
    }
}

std::vector<double> log_time_grid(double t_min, double t_max, int n) {
    if (!(t_min > 0.0) || !(t_max >= t_min))
        throw config_error("need 0 < t_min <= t_max");
    if (n < 1)
        throw config_error("time grid needs at least one point");
    std::vector<double> grid(n);
    if (n == 1) {
        grid[0] = t_min;
        return grid;
    }
    const double la = std::log(t_min), lb = std::log(t_max);
    for (int i = 0; i < n; ++i)
        grid[i] = std::exp(la + (lb - la) * static_cast<double>(i) / (n - 1));
    grid[n - 1] = t_max;
    return grid;
}

} // namespace mscluster
