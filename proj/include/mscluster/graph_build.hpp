#pragma once

#include <cstdint>
#include <string>

#include "mscluster/dataset.hpp"
#include "mscluster/distance.hpp"
#include "mscluster/graph.hpp"

namespace mscluster {

enum class GraphMethod { eps_ball, knn, cknn, mst, pmst, rmst };

GraphMethod parse_graph_method(const std::string& name); // throws config_error
std::string to_string(GraphMethod m);

struct GraphBuildParams {
    GraphMethod method = GraphMethod::cknn;
    int k = 7;                 // neighbour count for knn/cknn/rmst/pmst local scale
    double delta = 1.0;        // cknn density parameter, > 0
    double gamma = 0.5;        // rmst parameter, > 0
    double eps = 0.0;          // eps-ball radius; <= 0 selects mean d^7 rule
    double noise_ratio = 0.5;  // pmst r in [0,1]
    int ensemble_size = 20;    // pmst perturbed realizations
    std::uint64_t seed = 1;    // pmst noise seed
    bool connect = true;       // union with MST when disconnected
};

// A_ij = 1 iff d(i,j) < eps, strict.
Graph build_eps_ball(const DistanceMatrix& dm, double eps);

// Union-symmetrized k-nearest-neighbour graph: edge iff either endpoint
// ranks the other among its k nearest (ties broken by index).
Graph build_knn(const DistanceMatrix& dm, int k);

// Continuous kNN: edge iff d(i,j) < delta * sqrt(d^k(i) d^k(j)), strict.
Graph build_cknn(const DistanceMatrix& dm, int k, double delta);

// Minimum spanning tree of the complete distance graph. Deterministic:
// Kruskal over edges sorted by (weight, i, j).
Graph build_mst(const DistanceMatrix& dm);

// Perturbed MST: union of MSTs of noise-perturbed copies of the data plus
// the MST of the unperturbed data. Per-point noise is isotropic Gaussian
// with standard deviation r * d^k(i). Realization r uses the stream
// derive_seed(seed, {kPmstStream, r}), so results are reproducible and
// independent of scheduling.
Graph build_pmst(const Dataset& ds, int k, double noise_ratio, int ensemble_size,
                 std::uint64_t seed, int threads = 0);

inline constexpr std::uint64_t kPmstStream = 0x504d5354ull; // stream tag

// Relaxed MST: edge iff d(i,j) < max MST-path edge + gamma*(d^k(i)+d^k(j)).
Graph build_rmst(const DistanceMatrix& dm, int k, double gamma);

// Returns g unchanged when connected, otherwise the edge-union of g with
// the MST of dm. Result is always connected.
Graph ensure_connected(const Graph& g, const DistanceMatrix& dm);

// Dispatcher: builds per params.method, then applies ensure_connected when
// params.connect is set. eps <= 0 resolves to the mean d^7 radius.
Graph build_graph(const Dataset& ds, const DistanceMatrix& dm, const GraphBuildParams& params,
                  int threads = 0);

} // namespace mscluster
