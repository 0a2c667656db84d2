#include "mscluster/graph.hpp"

#include <algorithm>
#include <string>

#include "mscluster/errors.hpp"

namespace mscluster {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw data_error("edge endpoint out of range: (" + std::to_string(i) + "," +
                             std::to_string(j) + ") with n=" + std::to_string(n));
        if (i == j)
            throw data_error("self-loop on node " + std::to_string(i));
        g.adj_[i].push_back(j);
        g.adj_[j].push_back(i);
    }
    std::int64_t m = 0;
    for (auto& nbrs : g.adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        m += static_cast<std::int64_t>(nbrs.size());
    }
    g.m_ = m / 2;
    return g;
}

bool Graph::has_edge(int i, int j) const {
    const auto& nbrs = adj_[i];
    return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int i = 0; i < num_nodes(); ++i)
        for (int j : adj_[i])
            if (i < j)
                out.emplace_back(i, j);
    return out;
}

int Graph::num_components() const {
    const int n = num_nodes();
    std::vector<int> comp(n, -1);
    std::vector<int> stack;
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1)
            continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u : adj_[v]) {
                if (comp[u] == -1) {
                    comp[u] = count;
                    stack.push_back(u);
                }
            }
        }
        ++count;
    }
    return count;
}

Graph Graph::union_with(const Graph& other) const {
    if (num_nodes() != other.num_nodes())
        throw data_error("graph union over different node counts: " +
                         std::to_string(num_nodes()) + " vs " +
                         std::to_string(other.num_nodes()));
    auto all = edges();
    const auto more = other.edges();
    all.insert(all.end(), more.begin(), more.end());
    return from_edges(num_nodes(), all);
}

} // namespace mscluster
