#include <cmath>

#include "doctest.h"

#include "imsim/similarity.hpp"

using namespace imsim;

namespace {
const std::vector<double> fx{0.05, 0.25, 0.7};
const std::vector<double> fy{0.1, 0.45, 0.45};
const std::vector<double> fz{0.25, 0.2, 0.55};
} // namespace

TEST_CASE("published three-distribution comparison values") {
    CHECK(euclidean_distance(fx, fy) == doctest::Approx(0.324).epsilon(2e-3));
    CHECK(euclidean_distance(fx, fz) == doctest::Approx(0.255).epsilon(2e-3));
    CHECK(bhattacharyya(fx, fy).second == doctest::Approx(0.0332).epsilon(2e-2));
    CHECK(bhattacharyya(fx, fz).second == doctest::Approx(0.0451).epsilon(2e-2));
    CHECK(kl_divergence(fx, fy) == doctest::Approx(0.059).epsilon(2e-2));
    CHECK(kl_divergence(fx, fz) == doctest::Approx(0.098).epsilon(2e-2));
    // the acceptance tolerance, absolute
    CHECK(std::abs(euclidean_distance(fx, fy) - 0.324) < 1e-3);
    CHECK(std::abs(bhattacharyya(fx, fy).second - 0.033) < 1e-3);
    CHECK(std::abs(kl_divergence(fx, fy) - 0.059) < 1e-3);
    CHECK(std::abs(euclidean_distance(fx, fz) - 0.255) < 1e-3);
    CHECK(std::abs(bhattacharyya(fx, fz).second - 0.045) < 1e-3);
    CHECK(std::abs(kl_divergence(fx, fz) - 0.098) < 1e-3);
}

TEST_CASE("distance identities") {
    CHECK(euclidean_distance(fx, fx) == 0.0);
    auto [rho, bd] = bhattacharyya(fx, fx);
    CHECK(rho == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bd == doctest::Approx(0.0));
    CHECK(kl_divergence(fx, fx) == doctest::Approx(0.0));
    // KL is asymmetric in this orientation
    CHECK(kl_divergence(fx, fy) != doctest::Approx(kl_divergence(fy, fx)).epsilon(1e-6));
}

TEST_CASE("error statistics from confusion counts") {
    OutageCounts counts;
    // 60 H0 trials with 6 false alarms, 40 H1 trials with 10 misses
    for (int i = 0; i < 6; ++i) counts.add(true, false);
    for (int i = 0; i < 54; ++i) counts.add(false, false);
    for (int i = 0; i < 10; ++i) counts.add(false, true);
    for (int i = 0; i < 30; ++i) counts.add(true, true);
    ErrorStats stats = error_stats_from_counts(counts);
    CHECK(stats.p_fa == doctest::Approx(0.1));
    CHECK(stats.p_md == doctest::Approx(0.25));
    CHECK(stats.xi == doctest::Approx(0.6));
    CHECK(stats.se_fa == doctest::Approx(std::sqrt(0.1 * 0.9 / 60.0)));
    CHECK(stats.se_md == doctest::Approx(std::sqrt(0.25 * 0.75 / 40.0)));
    IndexResult idx = similarity_index(stats);
    CHECK(idx.value == doctest::Approx(1.0 - 0.6 * 0.1 - 0.4 * 0.25));
    CHECK(idx.xi_used == doctest::Approx(0.6));
    IndexResult half = similarity_index(stats, 0.5);
    CHECK(half.value == doctest::Approx(1.0 - 0.5 * (0.1 + 0.25)));
    CHECK(half.xi_used == doctest::Approx(0.5));
}

TEST_CASE("merging counts equals pooled counting") {
    OutageCounts a, b;
    a.add(true, false);
    a.add(false, true);
    b.add(false, false);
    b.add(true, true);
    OutageCounts pooled = a;
    pooled.merge(b);
    CHECK(pooled.n_h0 == 2);
    CHECK(pooled.n_h1 == 2);
    CHECK(pooled.n_false_alarm == 1);
    CHECK(pooled.n_miss == 1);
}

TEST_CASE("error probabilities from SINR pairs with the strict outage rule") {
    std::vector<SinrPair> pairs{
        {0.5, 2.0}, // false alarm
        {2.0, 2.0}, // agree: no outage
        {2.0, 0.5}, // miss
        {0.5, 0.5}, // agree: outage
    };
    ErrorStats stats = error_probs(pairs, 1.0);
    CHECK(stats.n_h0 == 2);
    CHECK(stats.n_h1 == 2);
    CHECK(stats.p_fa == doctest::Approx(0.5));
    CHECK(stats.p_md == doctest::Approx(0.5));
}

TEST_CASE("histogram overload agrees with the vector form") {
    Histogram hx(-10.0, 10.0, 4), hy(-10.0, 10.0, 4);
    for (int i = 0; i < 10; ++i) hx.add_db(-6.0);
    for (int i = 0; i < 30; ++i) hx.add_db(6.0);
    for (int i = 0; i < 20; ++i) hy.add_db(-6.0);
    for (int i = 0; i < 20; ++i) hy.add_db(6.0);
    auto [rho_h, bd_h] = bhattacharyya(hx, hy);
    auto [rho_v, bd_v] = bhattacharyya(hx.normalized(), hy.normalized());
    CHECK(rho_h == doctest::Approx(rho_v));
    CHECK(bd_h == doctest::Approx(bd_v));
    CHECK(rho_h == doctest::Approx(std::sqrt(0.25 * 0.5) + std::sqrt(0.75 * 0.5)));
}

TEST_CASE("index bounds from the Bhattacharyya coefficient") {
    SUBCASE("perfect overlap at xi = 1/2 pinches to 1/2") {
        auto [lo, hi] = bhattacharyya_index_bounds(0.5, 1.0);
        CHECK(lo == doctest::Approx(0.5));
        CHECK(hi == doctest::Approx(0.5));
    }
    SUBCASE("bounds are ordered and clamped to [0, 1]") {
        for (double xi : {0.1, 0.3, 0.5, 0.7, 0.97}) {
            for (double rho : {0.0, 0.2, 0.6, 1.0}) {
                auto [lo, hi] = bhattacharyya_index_bounds(xi, rho);
                CHECK(lo >= 0.0);
                CHECK(hi <= 1.0);
                CHECK(lo <= hi + 1e-12);
            }
        }
    }
}
