#include "mscluster/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "mscluster/errors.hpp"

namespace mscluster {

void Dataset::validate() const {
    if (n() < 2)
        throw data_error("dataset '" + name + "' needs at least 2 samples, got " +
                         std::to_string(n()));
    if (dim() < 1)
        throw data_error("dataset '" + name + "' has no feature columns");
    if (!labels.empty() && static_cast<int>(labels.size()) != n())
        throw data_error("label vector length " + std::to_string(labels.size()) +
                         " does not match sample count " + std::to_string(n()));
}

namespace {

bool parse_double(const std::string& tok, double& out) {
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::vector<std::string> tokenize(const std::string& line, bool comma) {
    std::vector<std::string> toks;
    if (comma) {
        std::string cur;
        std::stringstream ss(line);
        while (std::getline(ss, cur, ',')) {
            const auto a = cur.find_first_not_of(" \t\r");
            const auto b = cur.find_last_not_of(" \t\r");
            toks.push_back(a == std::string::npos ? std::string() : cur.substr(a, b - a + 1));
        }
        if (!line.empty() && line.back() == ',')
            toks.emplace_back();
    } else {
        std::stringstream ss(line);
        std::string tok;
        while (ss >> tok)
            toks.push_back(tok);
    }
    return toks;
}

} // namespace

Dataset load_dataset(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open dataset file: " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos)
            lines.push_back(line);
    }
    if (lines.empty())
        throw data_error("dataset file is empty: " + path);

    const bool comma = lines.front().find(',') != std::string::npos;
    std::vector<std::vector<std::string>> rows;
    rows.reserve(lines.size());
    for (const auto& l : lines)
        rows.push_back(tokenize(l, comma));

    // Header row: some first-row token is non-numeric while the value below
    // it is numeric. A non-numeric label column alone does not make one.
    bool has_header = false;
    if (rows.size() > 1) {
        for (std::size_t c = 0; c < rows[0].size() && c < rows[1].size(); ++c) {
            double v;
            if (!parse_double(rows[0][c], v) && parse_double(rows[1][c], v)) {
                has_header = true;
                break;
            }
        }
    }

    const std::size_t ncols = rows[has_header ? 1 : 0].size();
    int label_idx = -1;
    if (!label_column.empty()) {
        int parsed = 0;
        auto [p, ec] = std::from_chars(label_column.data(),
                                       label_column.data() + label_column.size(), parsed);
        if (ec == std::errc() && p == label_column.data() + label_column.size()) {
            label_idx = parsed;
        } else {
            if (!has_header)
                throw data_error("label column '" + label_column +
                                 "' given by name but the file has no header row");
            const auto& header = rows[0];
            const auto it = std::find(header.begin(), header.end(), label_column);
            if (it == header.end())
                throw data_error("label column '" + label_column + "' not found in header");
            label_idx = static_cast<int>(it - header.begin());
        }
        if (label_idx < 0 || label_idx >= static_cast<int>(ncols))
            throw data_error("label column index " + std::to_string(label_idx) +
                             " out of range for " + std::to_string(ncols) + " columns");
    }

    const std::size_t first_data = has_header ? 1 : 0;
    const std::size_t n = rows.size() - first_data;
    const std::size_t d = ncols - (label_idx >= 0 ? 1 : 0);
    if (n < 2)
        throw data_error("dataset has " + std::to_string(n) + " rows, need at least 2");
    if (d < 1)
        throw data_error("dataset has no feature columns besides the label");

    Dataset ds;
    ds.name = std::filesystem::path(path).stem().string();
    ds.samples.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    std::unordered_map<std::string, int> label_ids;
    if (label_idx >= 0)
        ds.labels.reserve(n);

    for (std::size_t r = first_data; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::size_t human_row = r + 1; // 1-based, counting the header
        if (row.size() != ncols)
            throw data_error("row " + std::to_string(human_row) + " has " +
                             std::to_string(row.size()) + " fields, expected " +
                             std::to_string(ncols));
        std::size_t f = 0;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (static_cast<int>(c) == label_idx) {
                auto [it, inserted] =
                    label_ids.try_emplace(row[c], static_cast<int>(label_ids.size()));
                if (inserted)
                    ds.label_names.push_back(row[c]);
                ds.labels.push_back(it->second);
                continue;
            }
            double v;
            if (!parse_double(row[c], v))
                throw data_error("row " + std::to_string(human_row) + ", column " +
                                 std::to_string(c) + ": not a number: '" + row[c] + "'");
            ds.samples(static_cast<Eigen::Index>(r - first_data),
                       static_cast<Eigen::Index>(f++)) = v;
        }
    }
    ds.validate();
    return ds;
}

void standardize_features(Dataset& ds) {
    const Eigen::Index n = ds.samples.rows();
    for (Eigen::Index c = 0; c < ds.samples.cols(); ++c) {
        auto col = ds.samples.col(c);
        const double mean = col.mean();
        const double var = (col.array() - mean).square().sum() / static_cast<double>(n);
        const double sd = std::sqrt(var);
        if (sd > 0.0)
            col = (col.array() - mean) / sd;
        else
            col.setZero();
    }
}

} // namespace mscluster
