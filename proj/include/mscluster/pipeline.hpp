#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mscluster/graph_build.hpp"
#include "mscluster/scale_selection.hpp"
#include "mscluster/scan_result.hpp"

namespace mscluster {

// Complete description of one clustering run. Everything influencing the
// result is here; out_dir/threads/artifact switches only affect where and
// how fast results land.
struct PipelineConfig {
    std::string data_path;
    std::string label_column;
    bool standardize = false;
    std::string dataset_name; // defaults to the file stem

    GraphBuildParams graph;

    double t_min = 1.0;
    double t_max = 1000.0;
    int n_times = 100;
    int n_louvain = 100;
    std::uint64_t seed = 1;

    ScaleSelectionParams selection;
    int c_target = 0; // 0 = unsupervised only

    std::string out_dir;            // empty = no artifacts written
    int threads = 0;                // 0 = hardware concurrency
    bool write_scan_artifacts = true;
    std::optional<double> dump_bt;  // write B(t) as dense CSV for this time

    void validate() const; // throws config_error
};

struct MetricsVsTruth {
    double nmi_value = 0.0;
    double ari_value = 0.0;
    double purity_value = 0.0;
};

struct ScaleReport {
    RobustScale scale;
    std::optional<MetricsVsTruth> truth_metrics;
};

struct RunReport {
    PipelineConfig config;
    std::string version;

    int n = 0, d = 0;
    bool labeled = false;
    int n_classes = 0;

    std::int64_t graph_edges = 0;
    double graph_mean_degree = 0.0;
    int components_pre_repair = 0;

    std::vector<ScaleReport> scales;
    std::vector<int> reported_scales; // unsupervised answer, primary first
    int c_found = 0;                  // c of the primary scale, 0 if none

    // Table-2 style evaluation: stored optimum closest to ground truth.
    std::optional<MetricsVsTruth> best_vs_truth;
    int best_vs_truth_t_index = 0;
    int best_vs_truth_c = 0;

    // Fixed-c evaluation when c_target was given.
    std::optional<MetricsVsTruth> fixed_c_metrics;
    bool fixed_c_found = false;

    std::map<std::string, double> stage_seconds; // not part of report.json
};

// Executes load -> distances -> graph -> scan -> scale selection -> metrics,
// writing artifacts to config.out_dir when set. Stage failures raise the
// stage-tagged error after flushing a FAILED marker file.
RunReport run_pipeline(const PipelineConfig& config);

// Deterministic JSON rendering of the report (timings and execution-only
// settings excluded so identical runs produce identical bytes).
std::string report_to_json(const RunReport& report);

struct BenchEntry {
    std::string dataset;
    std::string method_label;
    bool ok = false;
    std::string error;
    double nmi_value = 0.0;
    double ari_value = 0.0;
    double purity_value = 0.0;
    int c_found = 0;
    int c_star = 0;
    double seconds = 0.0;
};

struct BenchTable {
    std::vector<BenchEntry> rows;
    // dataset x method cells plus per-method averages, CSV.
    std::string to_csv() const;
};

// Runs each config, collecting Table-2 style scores; per-dataset failures
// become missing cells and the run continues.
BenchTable run_benchmark(const std::vector<PipelineConfig>& configs);

// Serialization helpers shared by the CLI and the python bindings.
void write_text_file(const std::string& path, const std::string& content);
void write_partition_file(const std::string& path, const Partition& p);
Partition read_partition_file(const std::string& path);
void write_edgelist(const std::string& path, const Graph& g);
void write_sparse_coo(const std::string& path, const Graph& g);
void write_scan_files(const std::string& dir, const ScanResult& sr);

} // namespace mscluster
