#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace mscluster {

// A set of n sample vectors in d dimensions, optionally with ground-truth
// class labels (canonical ids plus the original label tokens).
struct Dataset {
    std::string name;
    Eigen::MatrixXd samples;               // n x d
    std::vector<int> labels;               // canonical class ids; empty if unlabeled
    std::vector<std::string> label_names;  // class id -> original token

    int n() const { return static_cast<int>(samples.rows()); }
    int dim() const { return static_cast<int>(samples.cols()); }
    bool has_labels() const { return !labels.empty(); }
    int num_classes() const { return static_cast<int>(label_names.size()); }

    // Throws data_error on violated invariants (n < 2, d < 1, label length).
    void validate() const;
};

// Loads a delimited numeric table (comma or whitespace separated, optional
// header row). label_column selects the ground-truth column by header name
// or by 0-based index; empty means no labels.
Dataset load_dataset(const std::string& path, const std::string& label_column = "");

// Z-scores every feature column in place. Constant columns become all zero.
void standardize_features(Dataset& ds);

} // namespace mscluster
