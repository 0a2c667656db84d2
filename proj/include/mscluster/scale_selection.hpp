#pragma once

#include <cmath>
#include <vector>

#include "mscluster/partition.hpp"
#include "mscluster/scan_result.hpp"

namespace mscluster {

// A Markov-time interval over which the optimal partition is stable across
// both time and optimizer runs.
struct RobustScale {
    int idx_start = 0, idx_end = 0; // inclusive grid indices
    double t_start = 0.0, t_end = 0.0;
    Partition partition; // modal optimum over the interval
    int c = 0;
    double persistence = 0.0;     // ln(t_end / t_start)
    double mean_block_vi = 0.0;   // mean VI(t,t') over pairs inside the block
    double mean_dispersion = 0.0; // mean VI(t) over the interval
    double modal_share = 0.0;     // fraction of interval optima equal to partition
};

struct ScaleSelectionParams {
    // Negative values resolve to the n-dependent defaults:
    // block threshold 0.1 ln n, dispersion threshold 0.05 ln n.
    double min_persistence = 0.5 * 2.302585092994045684; // half a decade
    double vi_block_threshold = -1.0;
    double vi_dispersion_threshold = -1.0;
    // The all-in-one partition is not a clustering; scales with c == 1 are
    // dropped unless this is set.
    bool keep_trivial = false;

    double resolved_block_threshold(int n_nodes) const {
        return vi_block_threshold >= 0 ? vi_block_threshold : 0.1 * std::log(n_nodes);
    }
    double resolved_dispersion_threshold(int n_nodes) const {
        return vi_dispersion_threshold >= 0 ? vi_dispersion_threshold : 0.05 * std::log(n_nodes);
    }
};

// Segments the grid into maximal intervals of constant community count with
// consecutive-optima VI below the block threshold, keeps intervals whose
// mean dispersion and persistence pass the thresholds, and returns them
// sorted by descending persistence. Deterministic.
std::vector<RobustScale> find_robust_scales(const ScanResult& sr,
                                            const ScaleSelectionParams& params = {});

// Indices of the scales reported as the unsupervised answer: the most
// persistent scale, together with any scale within 10% of its persistence.
// The first index is the primary one (the finest among the tied scales).
std::vector<int> unsupervised_scale_choice(const std::vector<RobustScale>& scales);

// Among every stored partition (all times and runs) with exactly c_target
// groups, returns the one whose appearance interval has maximal persistence,
// ties broken by maximal stability score. Throws data_error listing the
// available counts when none matches.
Partition select_partition_with_c(const ScanResult& sr, int c_target);

struct TruthMatch {
    Partition partition;
    double nmi_value = 0.0;
    double ari_value = 0.0;
    int t_index = 0;
};

// The stored optimum g*(t) closest to the ground truth by NMI.
TruthMatch best_partition_vs_truth(const ScanResult& sr, const Partition& truth);

} // namespace mscluster
