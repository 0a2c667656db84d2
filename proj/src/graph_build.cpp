#include "mscluster/graph_build.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mscluster/errors.hpp"
#include "mscluster/parallel.hpp"
#include "mscluster/rng.hpp"

namespace mscluster {

GraphMethod parse_graph_method(const std::string& name) {
    if (name == "eps" || name == "eps_ball")
        return GraphMethod::eps_ball;
    if (name == "knn")
        return GraphMethod::knn;
    if (name == "cknn")
        return GraphMethod::cknn;
    if (name == "mst")
        return GraphMethod::mst;
    if (name == "pmst")
        return GraphMethod::pmst;
    if (name == "rmst")
        return GraphMethod::rmst;
    throw config_error("unknown graph method: '" + name +
                       "' (expected cknn|knn|eps|mst|pmst|rmst)");
}

std::string to_string(GraphMethod m) {
    switch (m) {
    case GraphMethod::eps_ball: return "eps";
    case GraphMethod::knn: return "knn";
    case GraphMethod::cknn: return "cknn";
    case GraphMethod::mst: return "mst";
    case GraphMethod::pmst: return "pmst";
    case GraphMethod::rmst: return "rmst";
    }
    return "?";
}

Graph build_eps_ball(const DistanceMatrix& dm, double eps) {
    if (!(eps > 0.0))
        throw config_error("eps must be positive, got " + std::to_string(eps));
    const int n = dm.n();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dm.values(i, j) < eps)
                edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

Graph build_knn(const DistanceMatrix& dm, int k) {
    const int n = dm.n();
    if (k < 1 || k >= n)
        throw config_error("knn k=" + std::to_string(k) + " must satisfy 1 <= k <= n-1");
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<double, int>> row(n - 1);
    for (int i = 0; i < n; ++i) {
        int c = 0;
        for (int j = 0; j < n; ++j)
            if (j != i)
                row[c++] = {dm.values(i, j), j};
        std::partial_sort(row.begin(), row.begin() + k, row.end());
        for (int r = 0; r < k; ++r)
            edges.emplace_back(std::min(i, row[r].second), std::max(i, row[r].second));
    }
    return Graph::from_edges(n, edges);
}

Graph build_cknn(const DistanceMatrix& dm, int k, double delta) {
    if (!(delta > 0.0))
        throw config_error("cknn delta must be positive, got " + std::to_string(delta));
    const auto np = kth_neighbor_distances(dm, k); // validates k range
    const int n = dm.n();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dm.values(i, j) < delta * std::sqrt(np.dk[i] * np.dk[j]))
                edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[b] = a;
        return true;
    }
};

// Kruskal on the complete graph of dist. Tie-break by (weight, i, j).
std::vector<std::pair<int, int>> mst_edges(const Eigen::MatrixXd& dist) {
    const int n = static_cast<int>(dist.rows());
    struct E {
        double w;
        int i, j;
    };
    std::vector<E> all;
    all.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            all.push_back({dist(i, j), i, j});
    std::sort(all.begin(), all.end(), [](const E& a, const E& b) {
        if (a.w != b.w)
            return a.w < b.w;
        if (a.i != b.i)
            return a.i < b.i;
        return a.j < b.j;
    });
    DisjointSet dsu(n);
    std::vector<std::pair<int, int>> tree;
    tree.reserve(n - 1);
    for (const auto& e : all) {
        if (dsu.unite(e.i, e.j)) {
            tree.emplace_back(e.i, e.j);
            if (static_cast<int>(tree.size()) == n - 1)
                break;
        }
    }
    return tree;
}

} // namespace

Graph build_mst(const DistanceMatrix& dm) {
    const int n = dm.n();
    if (n < 2)
        throw data_error("MST needs at least 2 nodes");
    return Graph::from_edges(n, mst_edges(dm.values));
}

Graph build_pmst(const Dataset& ds, int k, double noise_ratio, int ensemble_size,
                 std::uint64_t seed, int threads) {
    ds.validate();
    if (noise_ratio < 0.0 || noise_ratio > 1.0)
        throw config_error("pmst noise ratio must lie in [0,1], got " +
                           std::to_string(noise_ratio));
    if (ensemble_size < 1)
        throw config_error("pmst ensemble size must be >= 1");
    const int n = ds.n();
    const int d = ds.dim();
    const auto dm = pairwise_distances(ds, threads);
    const auto np = kth_neighbor_distances(dm, k); // validates k

    std::vector<std::vector<std::pair<int, int>>> trees(ensemble_size);
    parallel_for(0, ensemble_size, threads, [&](int r) {
        Rng rng(derive_seed(seed, {kPmstStream, static_cast<std::uint64_t>(r)}));
        Eigen::MatrixXd pts = ds.samples;
        for (int i = 0; i < n; ++i) {
            const double s = noise_ratio * np.dk[i];
            for (int c = 0; c < d; ++c)
                pts(i, c) += s * rng.next_gaussian();
        }
        Eigen::MatrixXd dist(n, n);
        for (int i = 0; i < n; ++i) {
            dist(i, i) = 0.0;
            for (int j = i + 1; j < n; ++j)
                dist(i, j) = dist(j, i) = (pts.row(i) - pts.row(j)).norm();
        }
        trees[r] = mst_edges(dist);
    });

    std::vector<std::pair<int, int>> edges = mst_edges(dm.values); // the original MST
    for (const auto& t : trees)
        edges.insert(edges.end(), t.begin(), t.end());
    return Graph::from_edges(n, edges);
}

Graph build_rmst(const DistanceMatrix& dm, int k, double gamma) {
    if (!(gamma > 0.0))
        throw config_error("rmst gamma must be positive, got " + std::to_string(gamma));
    const auto np = kth_neighbor_distances(dm, k);
    const int n = dm.n();
    const Graph tree = Graph::from_edges(n, mst_edges(dm.values));

    // Largest edge weight on the unique tree path, by traversal from every
    // root: O(n^2) total.
    Eigen::MatrixXd path_max = Eigen::MatrixXd::Zero(n, n);
    std::vector<int> stack;
    for (int root = 0; root < n; ++root) {
        std::vector<char> seen(n, 0);
        seen[root] = 1;
        stack.push_back(root);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u : tree.neighbors(v)) {
                if (seen[u])
                    continue;
                seen[u] = 1;
                path_max(root, u) = std::max(path_max(root, v), dm.values(v, u));
                stack.push_back(u);
            }
        }
    }

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dm.values(i, j) < path_max(i, j) + gamma * (np.dk[i] + np.dk[j]))
                edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

Graph ensure_connected(const Graph& g, const DistanceMatrix& dm) {
    if (g.num_nodes() != dm.n())
        throw data_error("graph has " + std::to_string(g.num_nodes()) + " nodes but distances " +
                         std::to_string(dm.n()));
    if (g.is_connected())
        return g;
    return g.union_with(build_mst(dm));
}

Graph build_graph(const Dataset& ds, const DistanceMatrix& dm, const GraphBuildParams& params,
                  int threads) {
    Graph g;
    switch (params.method) {
    case GraphMethod::eps_ball: {
        double eps = params.eps;
        if (eps <= 0.0) {
            // Default radius: average distance to the 7th neighbour.
            const auto np = kth_neighbor_distances(dm, std::min(7, dm.n() - 1));
            eps = std::accumulate(np.dk.begin(), np.dk.end(), 0.0) / np.dk.size();
        }
        g = build_eps_ball(dm, eps);
        break;
    }
    case GraphMethod::knn:
        g = build_knn(dm, params.k);
        break;
    case GraphMethod::cknn:
        g = build_cknn(dm, params.k, params.delta);
        break;
    case GraphMethod::mst:
        g = build_mst(dm);
        break;
    case GraphMethod::pmst:
        g = build_pmst(ds, params.k, params.noise_ratio, params.ensemble_size, params.seed,
                       threads);
        break;
    case GraphMethod::rmst:
        g = build_rmst(dm, params.k, params.gamma);
        break;
    }
    if (params.connect)
        g = ensure_connected(g, dm);
    return g;
}

} // namespace mscluster
