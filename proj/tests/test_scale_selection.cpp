#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"

#include "mscluster/errors.hpp"
#include "mscluster/louvain.hpp"
#include "mscluster/metrics.hpp"
#include "mscluster/scale_selection.hpp"

using namespace mscluster;

namespace {

// Hand-built scan result: per-time optima given explicitly, every run equal
// to the optimum (zero dispersion) unless noted.
ScanResult make_scan(const std::vector<Partition>& optima, int n_louvain = 3) {
    ScanResult sr;
    const int nt = static_cast<int>(optima.size());
    sr.n_nodes = optima.front().size();
    sr.n_times = nt;
    sr.n_louvain = n_louvain;
    sr.seed = 0;
    sr.t_grid = log_time_grid(1.0, 1000.0, nt);
    sr.optima = optima;
    sr.scores.assign(nt, 1.0);
    sr.all_partitions.assign(nt, std::vector<Partition>(n_louvain));
    sr.all_scores.assign(nt, std::vector<double>(n_louvain, 1.0));
    for (int ti = 0; ti < nt; ++ti)
        for (int run = 0; run < n_louvain; ++run)
            sr.all_partitions[ti][run] = optima[ti];
    sr.dispersion.assign(nt, 0.0);
    sr.vi_tt = vi_matrix(optima);
    return sr;
}

const Partition kNine = Partition::from_assignment(std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});

} // namespace

TEST_SUITE("scale_selection") {

TEST_CASE("identical optima everywhere form a single scale spanning the grid") {
    const auto p = Partition::from_assignment(std::vector<int>{0, 0, 1, 1, 2, 2, 0, 1, 2});
    const auto sr = make_scan(std::vector<Partition>(12, p));
    const auto scales = find_robust_scales(sr);
    REQUIRE(scales.size() == 1);
    CHECK(scales[0].idx_start == 0);
    CHECK(scales[0].idx_end == 11);
    CHECK(scales[0].c == 3);
    CHECK(scales[0].partition == p);
    CHECK(scales[0].modal_share == 1.0);
    CHECK(scales[0].mean_block_vi == 0.0);
    CHECK(scales[0].persistence == doctest::Approx(std::log(1000.0)));
}

TEST_CASE("a constructed plateau is recovered exactly") {
    // 4 grid points of c=9, then 8 of c=3 (both plateaus long enough).
    std::vector<Partition> optima;
    const auto coarse = Partition::from_assignment(std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 2});
    for (int i = 0; i < 4; ++i)
        optima.push_back(kNine);
    for (int i = 0; i < 8; ++i)
        optima.push_back(coarse);
    const auto sr = make_scan(optima);
    const auto scales = find_robust_scales(sr);
    REQUIRE(scales.size() == 2);
    // Sorted by persistence: the c=3 block is longer in log-time.
    CHECK(scales[0].c == 3);
    CHECK(scales[0].idx_start == 4);
    CHECK(scales[0].idx_end == 11);
    CHECK(scales[1].c == 9);
    CHECK(scales[1].idx_start == 0);
    CHECK(scales[1].idx_end == 3);
    CHECK(scales[0].partition == coarse);

    const auto chosen = unsupervised_scale_choice(scales);
    REQUIRE(!chosen.empty());
    CHECK(scales[chosen[0]].c == 3);
}

TEST_CASE("monotone community counts with no plateau yield no scales") {
    std::vector<Partition> optima;
    for (int c = 10; c >= 1; --c) {
        std::vector<int> a(10);
        for (int i = 0; i < 10; ++i)
            a[i] = i % c;
        optima.push_back(Partition::from_assignment(a));
    }
    const auto sr = make_scan(optima);
    CHECK(find_robust_scales(sr).empty());
}

TEST_CASE("high dispersion disqualifies an otherwise long plateau") {
    const auto p = Partition::from_assignment(std::vector<int>{0, 0, 1, 1, 2, 2, 0, 1, 2});
    auto sr = make_scan(std::vector<Partition>(10, p));
    sr.dispersion.assign(10, 10.0); // far above 0.05 ln n
    CHECK(find_robust_scales(sr).empty());
    ScaleSelectionParams loose;
    loose.vi_dispersion_threshold = 11.0;
    CHECK(find_robust_scales(sr, loose).size() == 1);
}

TEST_CASE("trivial all-in-one plateaus are not reported by default") {
    std::vector<Partition> optima;
    for (int i = 0; i < 6; ++i)
        optima.push_back(kNine);
    for (int i = 0; i < 6; ++i)
        optima.push_back(Partition::all_in_one(9));
    const auto sr = make_scan(optima);
    const auto scales = find_robust_scales(sr);
    REQUIRE(scales.size() == 1);
    CHECK(scales[0].c == 9);
    ScaleSelectionParams keep;
    keep.keep_trivial = true;
    CHECK(find_robust_scales(sr, keep).size() == 2);
}

TEST_CASE("blocks split when consecutive optima differ at equal c") {
    // Same community count but a completely different membership mid-way.
    const auto a = Partition::from_assignment(std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 2});
    const auto b = Partition::from_assignment(std::vector<int>{0, 1, 2, 0, 1, 2, 0, 1, 2});
    std::vector<Partition> optima(6, a);
    for (int i = 0; i < 6; ++i)
        optima.push_back(b);
    const auto sr = make_scan(optima);
    const auto scales = find_robust_scales(sr);
    CHECK(scales.size() == 2);
    for (const auto& s : scales)
        CHECK(s.modal_share == 1.0);
}

TEST_CASE("select_partition_with_c picks the most persistent candidate") {
    const auto coarse = Partition::from_assignment(std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 2});
    std::vector<Partition> optima(3, kNine);
    for (int i = 0; i < 9; ++i)
        optima.push_back(coarse);
    auto sr = make_scan(optima);
    const auto picked = select_partition_with_c(sr, 3);
    CHECK(picked == coarse);
    CHECK(select_partition_with_c(sr, 9) == kNine);
    CHECK(picked.num_groups() == 3);

    CHECK_THROWS_WITH_AS(select_partition_with_c(sr, 4), doctest::Contains("available"),
                         data_error);
}

TEST_CASE("select_partition_with_c searches every run, not only optima") {
    const auto rare = Partition::from_assignment(std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1, 0});
    auto sr = make_scan(std::vector<Partition>(8, kNine));
    sr.all_partitions[3][1] = rare; // appears once, in a non-best run
    sr.all_scores[3][1] = 0.5;
    CHECK(select_partition_with_c(sr, 2) == rare);
}

TEST_CASE("single stored partition of the requested c is returned") {
    const auto two = Partition::from_assignment(std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1, 1});
    const auto sr = make_scan(std::vector<Partition>(4, two), 1);
    CHECK(select_partition_with_c(sr, 2) == two);
}

TEST_CASE("best_partition_vs_truth") {
    const auto coarse = Partition::from_assignment(std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 2});
    std::vector<Partition> optima(3, kNine);
    for (int i = 0; i < 5; ++i)
        optima.push_back(coarse);
    const auto sr = make_scan(optima);

    SUBCASE("exact truth gives NMI 1") {
        const auto tm = best_partition_vs_truth(sr, coarse);
        CHECK(tm.partition == coarse);
        CHECK(tm.nmi_value == doctest::Approx(1.0));
        CHECK(tm.ari_value == doctest::Approx(1.0));
        CHECK(tm.t_index == 3); // earliest occurrence wins ties
    }
    SUBCASE("argmax agrees with a direct recomputation") {
        const auto truth = Partition::from_assignment(std::vector<int>{0, 0, 1, 1, 2, 2, 0, 1, 2});
        const auto tm = best_partition_vs_truth(sr, truth);
        double best = -1.0;
        int best_ti = 0;
        for (int ti = 0; ti < sr.n_times; ++ti) {
            const double v = nmi(sr.optima[ti], truth);
            if (v > best) {
                best = v;
                best_ti = ti;
            }
        }
        CHECK(tm.t_index == best_ti);
        CHECK(tm.nmi_value == doctest::Approx(best));
    }
    SUBCASE("length mismatch raises") {
        CHECK_THROWS_AS(best_partition_vs_truth(sr, Partition::singletons(5)), data_error);
    }
}

TEST_CASE("scales are deterministic across repeated calls") {
    const auto p = Partition::from_assignment(std::vector<int>{0, 0, 1, 1, 2, 2, 0, 1, 2});
    const auto sr = make_scan(std::vector<Partition>(10, p));
    const auto a = find_robust_scales(sr);
    const auto b = find_robust_scales(sr);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].idx_start == b[i].idx_start);
        CHECK(a[i].partition == b[i].partition);
    }
}

} // TEST_SUITE
