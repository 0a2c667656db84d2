#include "mscluster/scale_selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "mscluster/errors.hpp"
#include "mscluster/metrics.hpp"

namespace mscluster {

std::vector<RobustScale> find_robust_scales(const ScanResult& sr,
                                            const ScaleSelectionParams& params) {
    sr.validate();
    const int nt = sr.n_times;
    const double block_thresh = params.resolved_block_threshold(sr.n_nodes);
    const double disp_thresh = params.resolved_dispersion_threshold(sr.n_nodes);

    std::vector<RobustScale> scales;
    int start = 0;
    for (int i = 1; i <= nt; ++i) {
        const bool boundary =
            i == nt || sr.optima[i].num_groups() != sr.optima[i - 1].num_groups() ||
            sr.vi_tt(i - 1, i) >= block_thresh;
        if (!boundary)
            continue;
        const int end = i - 1; // inclusive maximal segment [start, end]
        const int len = end - start + 1;
        const double persistence = std::log(sr.t_grid[end] / sr.t_grid[start]);
        double mean_disp = 0.0;
        for (int a = start; a <= end; ++a)
            mean_disp += sr.dispersion[a];
        mean_disp /= len;
        const int c = sr.optima[start].num_groups();
        const bool keep = persistence >= params.min_persistence && mean_disp < disp_thresh &&
                          (params.keep_trivial || c > 1);
        if (keep) {
            RobustScale rs;
            rs.idx_start = start;
            rs.idx_end = end;
            rs.t_start = sr.t_grid[start];
            rs.t_end = sr.t_grid[end];
            rs.c = c;
            rs.persistence = persistence;
            rs.mean_dispersion = mean_disp;
            double block_vi = 0.0;
            for (int a = start; a <= end; ++a)
                for (int b = a + 1; b <= end; ++b)
                    block_vi += sr.vi_tt(a, b);
            rs.mean_block_vi = len > 1 ? block_vi / (0.5 * len * (len - 1)) : 0.0;
            // Modal optimum over the interval; ties go to first appearance.
            std::unordered_map<std::uint64_t, int> count;
            int best_count = 0, best_at = start;
            for (int a = start; a <= end; ++a) {
                const int cnt = ++count[sr.optima[a].hash()];
                if (cnt > best_count) {
                    best_count = cnt;
                    best_at = a;
                }
            }
            rs.partition = sr.optima[best_at];
            rs.modal_share = static_cast<double>(best_count) / len;
            scales.push_back(std::move(rs));
        }
        start = i;
    }
    std::stable_sort(scales.begin(), scales.end(), [](const RobustScale& a, const RobustScale& b) {
        if (a.persistence != b.persistence)
            return a.persistence > b.persistence;
        return a.idx_start < b.idx_start;
    });
    return scales;
}

std::vector<int> unsupervised_scale_choice(const std::vector<RobustScale>& scales) {
    if (scales.empty())
        return {};
    const double top = scales[0].persistence;
    std::vector<int> chosen;
    for (int i = 0; i < static_cast<int>(scales.size()); ++i)
        if (scales[i].persistence >= 0.9 * top)
            chosen.push_back(i);
    // Finest partition first among the near-ties.
    std::stable_sort(chosen.begin(), chosen.end(),
                     [&](int a, int b) { return scales[a].c > scales[b].c; });
    return chosen;
}

Partition select_partition_with_c(const ScanResult& sr, int c_target) {
    sr.validate();
    if (c_target < 1)
        throw config_error("target community count must be positive");

    struct Candidate {
        Partition partition;
        int first_t, last_t;
        double best_score;
        int first_run;
    };
    std::unordered_map<std::uint64_t, Candidate> candidates;
    std::set<int> available;
    for (int ti = 0; ti < sr.n_times; ++ti) {
        for (int run = 0; run < sr.n_louvain; ++run) {
            const Partition& p = sr.all_partitions[ti][run];
            available.insert(p.num_groups());
            if (p.num_groups() != c_target)
                continue;
            const double score = sr.all_scores[ti][run];
            auto [it, inserted] = candidates.try_emplace(p.hash());
            Candidate& cand = it->second;
            if (inserted) {
                cand.partition = p;
                cand.first_t = cand.last_t = ti;
                cand.best_score = score;
                cand.first_run = run;
            } else {
                cand.last_t = ti;
                cand.best_score = std::max(cand.best_score, score);
            }
        }
    }
    if (candidates.empty()) {
        std::string have;
        for (int c : available)
            have += (have.empty() ? "" : ", ") + std::to_string(c);
        throw data_error("no stored partition has " + std::to_string(c_target) +
                         " communities; available counts: {" + have + "}");
    }
    const Candidate* best = nullptr;
    double best_persistence = -1.0;
    for (const auto& [hash, cand] : candidates) {
        const double persistence = std::log(sr.t_grid[cand.last_t] / sr.t_grid[cand.first_t]);
        const bool wins =
            best == nullptr || persistence > best_persistence ||
            (persistence == best_persistence &&
             (cand.best_score > best->best_score ||
              (cand.best_score == best->best_score &&
               (cand.first_t < best->first_t ||
                (cand.first_t == best->first_t && cand.first_run < best->first_run)))));
        if (wins) {
            best = &cand;
            best_persistence = persistence;
        }
    }
    return best->partition;
}

TruthMatch best_partition_vs_truth(const ScanResult& sr, const Partition& truth) {
    sr.validate();
    if (truth.size() != sr.n_nodes)
        throw data_error("truth partition covers " + std::to_string(truth.size()) +
                         " nodes, scan has " + std::to_string(sr.n_nodes));
    TruthMatch tm;
    double best = -1.0;
    for (int ti = 0; ti < sr.n_times; ++ti) {
        const double score = nmi(sr.optima[ti], truth);
        if (score > best) {
            best = score;
            tm.t_index = ti;
        }
    }
    tm.partition = sr.optima[tm.t_index];
    tm.nmi_value = best;
    tm.ari_value = ari(tm.partition, truth);
    return tm;
}

} // namespace mscluster
