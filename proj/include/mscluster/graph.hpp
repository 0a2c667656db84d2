#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mscluster {

// Undirected unweighted graph: symmetric adjacency, no self-loops, stored as
// sorted neighbor lists. Node i corresponds to sample i of the source data.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n) {}

    // Builds from an edge list; duplicate edges collapse, (i,j) == (j,i).
    // Self-loops and out-of-range endpoints throw data_error.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int num_nodes() const { return static_cast<int>(adj_.size()); }
    std::int64_t num_edges() const { return m_; }
    double mean_degree() const {
        return adj_.empty() ? 0.0 : 2.0 * static_cast<double>(m_) / static_cast<double>(adj_.size());
    }

    const std::vector<int>& neighbors(int i) const { return adj_[i]; }
    int degree(int i) const { return static_cast<int>(adj_[i].size()); }
    bool has_edge(int i, int j) const;

    // Edge list with i < j, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    int num_components() const;
    bool is_connected() const { return num_nodes() > 0 && num_components() == 1; }

    Graph union_with(const Graph& other) const;

private:
    std::vector<std::vector<int>> adj_;
    std::int64_t m_ = 0;
};

} // namespace mscluster
