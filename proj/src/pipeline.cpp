#include "mscluster/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mscluster/dataset.hpp"
#include "mscluster/distance.hpp"
#include "mscluster/dynamics.hpp"
#include "mscluster/errors.hpp"
#include "mscluster/louvain.hpp"
#include "mscluster/metrics.hpp"
#include "mscluster/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mscluster {

namespace {

// Shortest round-trip decimal form; keeps text artifacts byte-deterministic.
std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

class StageClock {
public:
    explicit StageClock(std::map<std::string, double>& sink) : sink_(sink) {}
    void start(const std::string& stage) {
        flush();
        stage_ = stage;
        begin_ = std::chrono::steady_clock::now();
    }
    void flush() {
        if (stage_.empty())
            return;
        const auto end = std::chrono::steady_clock::now();
        sink_[stage_] = std::chrono::duration<double>(end - begin_).count();
        stage_.clear();
    }

private:
    std::map<std::string, double>& sink_;
    std::string stage_;
    std::chrono::steady_clock::time_point begin_;
};

void write_failed_marker(const std::string& out_dir, const std::string& stage,
                         const std::string& message) {
    if (out_dir.empty())
        return;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    std::ofstream out(fs::path(out_dir) / "FAILED");
    out << stage << ": " << message << "\n";
}

json metrics_json(const MetricsVsTruth& m) {
    return json{{"nmi", m.nmi_value}, {"ari", m.ari_value}, {"purity", m.purity_value}};
}

json scale_json(const ScaleReport& sc) {
    json j{{"c", sc.scale.c},
           {"t_start", sc.scale.t_start},
           {"t_end", sc.scale.t_end},
           {"index_range", {sc.scale.idx_start, sc.scale.idx_end}},
           {"persistence", sc.scale.persistence},
           {"mean_block_vi", sc.scale.mean_block_vi},
           {"mean_dispersion", sc.scale.mean_dispersion},
           {"modal_share", sc.scale.modal_share}};
    if (sc.truth_metrics)
        j["metrics_vs_truth"] = metrics_json(*sc.truth_metrics);
    return j;
}

json config_json(const PipelineConfig& cfg) {
    // Execution-only settings (out_dir, threads, artifact switches) are
    // deliberately not echoed: identical science must give identical bytes.
    return json{
        {"data_path", cfg.data_path},
        {"label_column", cfg.label_column},
        {"standardize", cfg.standardize},
        {"dataset_name", cfg.dataset_name},
        {"graph",
         {{"method", to_string(cfg.graph.method)},
          {"k", cfg.graph.k},
          {"delta", cfg.graph.delta},
          {"gamma", cfg.graph.gamma},
          {"eps", cfg.graph.eps},
          {"noise_ratio", cfg.graph.noise_ratio},
          {"ensemble_size", cfg.graph.ensemble_size},
          {"seed", cfg.graph.seed},
          {"connect", cfg.graph.connect}}},
        {"t_min", cfg.t_min},
        {"t_max", cfg.t_max},
        {"n_times", cfg.n_times},
        {"n_louvain", cfg.n_louvain},
        {"seed", cfg.seed},
        {"selection",
         {{"min_persistence", cfg.selection.min_persistence},
          {"vi_block_threshold", cfg.selection.vi_block_threshold},
          {"vi_dispersion_threshold", cfg.selection.vi_dispersion_threshold},
          {"keep_trivial", cfg.selection.keep_trivial}}},
        {"c_target", cfg.c_target}};
}

} // namespace

void PipelineConfig::validate() const {
    if (data_path.empty())
        throw config_error("no dataset path given");
    if (!fs::exists(data_path))
        throw config_error("dataset path does not exist: " + data_path);
    if (!(t_min > 0.0) || !(t_max >= t_min))
        throw config_error("need 0 < t_min <= t_max");
    if (n_times < 1)
        throw config_error("n_times must be >= 1");
    if (n_louvain < 1)
        throw config_error("n_louvain must be >= 1");
    if (c_target < 0)
        throw config_error("c_target must be positive (or 0 for unsupervised)");
    if (graph.k < 1)
        throw config_error("k must be >= 1");
    if (graph.method == GraphMethod::cknn && !(graph.delta > 0.0))
        throw config_error("cknn delta must be positive");
    if (graph.method == GraphMethod::rmst && !(graph.gamma > 0.0))
        throw config_error("rmst gamma must be positive");
    if (graph.method == GraphMethod::pmst &&
        (graph.noise_ratio < 0.0 || graph.noise_ratio > 1.0))
        throw config_error("pmst noise ratio must lie in [0,1]");
    if (graph.method == GraphMethod::pmst && graph.ensemble_size < 1)
        throw config_error("pmst ensemble size must be >= 1");
    if (dump_bt && (!std::isfinite(*dump_bt) || *dump_bt < 0.0))
        throw config_error("dump-bt time must be finite and non-negative");
}

void write_text_file(const std::string& path, const std::string& content) {
    const fs::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw data_error("cannot open for writing: " + path);
    out << content;
    if (!out)
        throw data_error("write failed: " + path);
}

void write_partition_file(const std::string& path, const Partition& p) {
    std::string body;
    body.reserve(static_cast<std::size_t>(p.size()) * 3);
    for (int a : p.assignment()) {
        body += std::to_string(a);
        body += '\n';
    }
    write_text_file(path, body);
}

Partition read_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open partition file: " + path);
    std::vector<int> raw;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        int v = 0;
        const char* b = line.data();
        const char* e = b + line.size();
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e)
            throw data_error("bad partition line in " + path + ": '" + line + "'");
        raw.push_back(v);
    }
    if (raw.empty())
        throw data_error("empty partition file: " + path);
    return Partition::from_assignment(raw);
}

void write_edgelist(const std::string& path, const Graph& g) {
    std::string body;
    for (auto [i, j] : g.edges()) {
        body += std::to_string(i);
        body += ' ';
        body += std::to_string(j);
        body += '\n';
    }
    write_text_file(path, body);
}

void write_sparse_coo(const std::string& path, const Graph& g) {
    std::string body;
    for (int i = 0; i < g.num_nodes(); ++i)
        for (int j : g.neighbors(i)) {
            body += std::to_string(i);
            body += ' ';
            body += std::to_string(j);
            body += " 1\n";
        }
    write_text_file(path, body);
}

void write_scan_files(const std::string& dir, const ScanResult& sr) {
    {
        std::string body;
        for (int ti = 0; ti < sr.n_times; ++ti)
            for (int run = 0; run < sr.n_louvain; ++run) {
                body += std::to_string(ti);
                body += ',';
                body += std::to_string(run);
                for (int a : sr.all_partitions[ti][run].assignment()) {
                    body += ',';
                    body += std::to_string(a);
                }
                body += '\n';
            }
        write_text_file((fs::path(dir) / "partitions.csv").string(), body);
    }
    {
        std::string body;
        for (int a = 0; a < sr.n_times; ++a) {
            for (int b = 0; b < sr.n_times; ++b) {
                if (b)
                    body += ',';
                body += format_double(sr.vi_tt(a, b));
            }
            body += '\n';
        }
        write_text_file((fs::path(dir) / "vi_tt.csv").string(), body);
    }
    {
        std::string body = "t,vi\n";
        for (int ti = 0; ti < sr.n_times; ++ti) {
            body += format_double(sr.t_grid[ti]);
            body += ',';
            body += format_double(sr.dispersion[ti]);
            body += '\n';
        }
        write_text_file((fs::path(dir) / "vi_t.csv").string(), body);
    }
    {
        std::string body = "t,num_communities,stability\n";
        for (int ti = 0; ti < sr.n_times; ++ti) {
            body += format_double(sr.t_grid[ti]);
            body += ',';
            body += std::to_string(sr.optima[ti].num_groups());
            body += ',';
            body += format_double(sr.scores[ti]);
            body += '\n';
        }
        write_text_file((fs::path(dir) / "ncomms_r.csv").string(), body);
    }
}

std::string report_to_json(const RunReport& report) {
    json j;
    j["version"] = report.version;
    j["config"] = config_json(report.config);
    j["data"] = {{"n", report.n},
                 {"d", report.d},
                 {"labeled", report.labeled},
                 {"n_classes", report.n_classes}};
    j["graph_summary"] = {{"n", report.n},
                          {"edges", report.graph_edges},
                          {"mean_degree", report.graph_mean_degree},
                          {"components_pre_repair", report.components_pre_repair}};
    j["scales"] = json::array();
    for (const auto& sc : report.scales)
        j["scales"].push_back(scale_json(sc));
    j["unsupervised"] = {{"reported_scales", report.reported_scales},
                         {"c_found", report.c_found}};
    if (report.best_vs_truth) {
        j["best_vs_truth"] = metrics_json(*report.best_vs_truth);
        j["best_vs_truth"]["t_index"] = report.best_vs_truth_t_index;
        j["best_vs_truth"]["c"] = report.best_vs_truth_c;
    }
    if (report.fixed_c_found) {
        j["fixed_c"] = {{"c_target", report.config.c_target}};
        if (report.fixed_c_metrics)
            j["fixed_c"]["metrics_vs_truth"] = metrics_json(*report.fixed_c_metrics);
    }
    return j.dump(2) + "\n";
}

RunReport run_pipeline(const PipelineConfig& config_in) {
    PipelineConfig config = config_in;
    config.validate();

    RunReport report;
    report.version = kVersion;
    StageClock clock(report.stage_seconds);
    std::string stage = "load";
    try {
        clock.start("load");
        Dataset ds = load_dataset(config.data_path, config.label_column);
        if (!config.dataset_name.empty())
            ds.name = config.dataset_name;
        config.dataset_name = ds.name;
        if (config.standardize)
            standardize_features(ds);
        report.config = config;
        report.n = ds.n();
        report.d = ds.dim();
        report.labeled = ds.has_labels();
        report.n_classes = ds.num_classes();

        stage = "distances";
        clock.start("distances");
        const DistanceMatrix dm = pairwise_distances(ds, config.threads);

        stage = "graph";
        clock.start("graph");
        GraphBuildParams raw_params = config.graph;
        raw_params.connect = false;
        Graph g = build_graph(ds, dm, raw_params, config.threads);
        report.components_pre_repair = g.num_components();
        if (config.graph.connect)
            g = ensure_connected(g, dm);
        report.graph_edges = g.num_edges();
        report.graph_mean_degree = g.mean_degree();

        stage = "scan";
        clock.start("scan");
        const std::vector<double> grid = log_time_grid(config.t_min, config.t_max, config.n_times);
        const ScanResult sr = scan(g, grid, config.n_louvain, config.seed, config.threads);

        stage = "selection";
        clock.start("selection");
        const std::vector<RobustScale> scales = find_robust_scales(sr, config.selection);
        report.reported_scales = unsupervised_scale_choice(scales);
        report.c_found =
            report.reported_scales.empty() ? 0 : scales[report.reported_scales.front()].c;

        stage = "metrics";
        clock.start("metrics");
        Partition truth;
        if (ds.has_labels())
            truth = Partition::from_assignment(ds.labels);
        for (const auto& rs : scales) {
            ScaleReport sc;
            sc.scale = rs;
            if (ds.has_labels())
                sc.truth_metrics = MetricsVsTruth{nmi(rs.partition, truth),
                                                  ari(rs.partition, truth),
                                                  purity(rs.partition, truth)};
            report.scales.push_back(std::move(sc));
        }
        if (ds.has_labels()) {
            const TruthMatch tm = best_partition_vs_truth(sr, truth);
            report.best_vs_truth = MetricsVsTruth{tm.nmi_value, tm.ari_value,
                                                  purity(tm.partition, truth)};
            report.best_vs_truth_t_index = tm.t_index;
            report.best_vs_truth_c = tm.partition.num_groups();
        }
        Partition fixed_c_partition;
        if (config.c_target > 0) {
            fixed_c_partition = select_partition_with_c(sr, config.c_target);
            report.fixed_c_found = true;
            if (ds.has_labels())
                report.fixed_c_metrics = MetricsVsTruth{nmi(fixed_c_partition, truth),
                                                        ari(fixed_c_partition, truth),
                                                        purity(fixed_c_partition, truth)};
        }

        stage = "serialize";
        clock.start("serialize");
        if (!config.out_dir.empty()) {
            const fs::path out(config.out_dir);
            fs::create_directories(out);
            write_edgelist((out / "graph.edgelist").string(), g);
            write_sparse_coo((out / "graph_adjacency.coo").string(), g);
            if (config.write_scan_artifacts)
                write_scan_files((out / "scan").string(), sr);
            json scales_j = json::array();
            for (std::size_t i = 0; i < report.scales.size(); ++i) {
                json sj = scale_json(report.scales[i]);
                sj["partition_file"] = "partition_scale_" + std::to_string(i) + ".csv";
                scales_j.push_back(sj);
                write_partition_file(
                    (out / ("partition_scale_" + std::to_string(i) + ".csv")).string(),
                    report.scales[i].scale.partition);
            }
            write_text_file((out / "robust_scales.json").string(),
                            json{{"scales", scales_j},
                                 {"reported_scales", report.reported_scales},
                                 {"c_found", report.c_found}}
                                    .dump(2) +
                                "\n");
            if (ds.has_labels()) {
                write_partition_file((out / "truth.csv").string(), truth);
                const TruthMatch tm = best_partition_vs_truth(sr, truth);
                write_partition_file((out / "partition_best_vs_truth.csv").string(),
                                     tm.partition);
            }
            if (report.fixed_c_found)
                write_partition_file((out / "partition_fixed_c.csv").string(),
                                     fixed_c_partition);
            if (config.dump_bt) {
                const DiffusionOperators ops = diffusion_operators(g);
                const Eigen::MatrixXd b = autocovariance_matrix(ops, *config.dump_bt);
                std::string body;
                for (Eigen::Index r = 0; r < b.rows(); ++r) {
                    for (Eigen::Index c = 0; c < b.cols(); ++c) {
                        if (c)
                            body += ',';
                        body += format_double(b(r, c));
                    }
                    body += '\n';
                }
                write_text_file((out / "bt.csv").string(), body);
            }
            write_text_file((out / "report.json").string(), report_to_json(report));
        }
        clock.flush();
        if (!config.out_dir.empty()) {
            json timings{{"threads", config.threads},
                         {"out_dir", config.out_dir},
                         {"stage_seconds", report.stage_seconds}};
            write_text_file((fs::path(config.out_dir) / "timings.json").string(),
                            timings.dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        clock.flush();
        write_failed_marker(config.out_dir, stage, e.what());
        throw;
    }
    return report;
}

std::string BenchTable::to_csv() const {
    std::string body = "dataset,method,status,nmi,ari,purity,c_found,c_star,seconds\n";
    for (const auto& row : rows) {
        body += row.dataset;
        body += ',';
        body += row.method_label;
        body += ',';
        body += row.ok ? "ok" : "failed";
        body += ',';
        if (row.ok) {
            body += format_double(row.nmi_value);
            body += ',';
            body += format_double(row.ari_value);
            body += ',';
            body += format_double(row.purity_value);
            body += ',';
            body += std::to_string(row.c_found);
            body += ',';
            body += std::to_string(row.c_star);
        } else {
            body += ",,,,";
        }
        body += ',';
        body += format_double(row.seconds);
        body += '\n';
    }
    // Per-method averages over completed rows, Table-style footer.
    std::vector<std::string> methods;
    for (const auto& row : rows)
        if (std::find(methods.begin(), methods.end(), row.method_label) == methods.end())
            methods.push_back(row.method_label);
    for (const auto& method : methods) {
        double sn = 0, sa = 0, sp = 0;
        int count = 0;
        for (const auto& row : rows)
            if (row.ok && row.method_label == method) {
                sn += row.nmi_value;
                sa += row.ari_value;
                sp += row.purity_value;
                ++count;
            }
        if (count == 0)
            continue;
        body += "average,";
        body += method;
        body += ",ok,";
        body += format_double(sn / count);
        body += ',';
        body += format_double(sa / count);
        body += ',';
        body += format_double(sp / count);
        body += ",,,\n";
    }
    return body;
}

BenchTable run_benchmark(const std::vector<PipelineConfig>& configs) {
    BenchTable table;
    for (const auto& cfg : configs) {
        BenchEntry entry;
        entry.dataset = cfg.dataset_name.empty()
                            ? fs::path(cfg.data_path).stem().string()
                            : cfg.dataset_name;
        entry.method_label = to_string(cfg.graph.method) + " k=" + std::to_string(cfg.graph.k);
        if (cfg.graph.method == GraphMethod::cknn)
            entry.method_label += " delta=" + format_double(cfg.graph.delta);
        const auto begin = std::chrono::steady_clock::now();
        try {
            const RunReport report = run_pipeline(cfg);
            entry.ok = true;
            if (report.best_vs_truth) {
                entry.nmi_value = report.best_vs_truth->nmi_value;
                entry.ari_value = report.best_vs_truth->ari_value;
                entry.purity_value = report.best_vs_truth->purity_value;
            }
            entry.c_found = report.c_found;
            entry.c_star = report.n_classes;
        } catch (const std::exception& e) {
            entry.ok = false;
            entry.error = e.what();
        }
        entry.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
        table.rows.push_back(std::move(entry));
    }
    return table;
}

} // namespace mscluster
