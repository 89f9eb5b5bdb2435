#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gwkit/gw_descriptive.hpp"
#include "helpers.hpp"

using namespace gwkit;
using testutil::random_points;

namespace {

ObservationTable with_variable(ObservationTable t, std::vector<double> v) {
    t.attr_names.push_back("v");
    t.attr_values.push_back(std::move(v));
    return t;
}

const KernelSpec kBoxFixed{KernelShape::boxcar, false, MetricSpec::euclidean()};
const KernelSpec kBisqAdaptive{KernelShape::bisquare, true, MetricSpec::euclidean()};

}  // namespace

TEST_CASE("gw_summary: boxcar at full bandwidth gives the global mean everywhere") {
    std::mt19937 rng(808);
    auto pts = random_points(rng, 17);
    std::vector<double> v(17);
    std::normal_distribution<double> g(10.0, 4.0);
    for (auto& x : v) x = g(rng);
    auto t = with_variable(pts, v);
    const double b = build_distance_matrix(t).d.max() + 1.0;

    auto out = gw_summary(t, "v", kBoxFixed, Bandwidth::fixed(b), {StatKind::mean});
    const double global = arma::mean(arma::vec(v));
    for (arma::uword i = 0; i < out[0].values.n_elem; ++i)
        CHECK(out[0].values[i] == doctest::Approx(global).epsilon(1e-12));
}

TEST_CASE("gw_summary: uniform weights give the population standard deviation") {
    // boxcar over all 5 points = plain population moments of the 5 values
    std::mt19937 rng(5);
    auto t = with_variable(random_points(rng, 5), {2.0, 4.0, 4.0, 4.0, 5.0});
    // hand oracle: mean 3.8, population variance (3.24+.04*3+1.44)/5 = 0.96
    const double b = build_distance_matrix(t).d.max() + 1.0;
    auto out = gw_summary(t, "v", kBoxFixed, Bandwidth::fixed(b),
                          {StatKind::mean, StatKind::stddev});
    for (arma::uword i = 0; i < 5; ++i) {
        CHECK(out[0].values[i] == doctest::Approx(3.8).epsilon(1e-12));
        CHECK(out[1].values[i] == doctest::Approx(std::sqrt(0.96)).epsilon(1e-12));
    }
}

TEST_CASE("gw_summary: single positive weight degenerates cleanly") {
    // adaptive k=1: only the focal point itself carries weight (boxcar)
    std::mt19937 rng(6);
    auto t = with_variable(random_points(rng, 6), {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
    const KernelSpec box_ad{KernelShape::boxcar, true, MetricSpec::euclidean()};
    auto out = gw_summary(t, "v", box_ad, Bandwidth::adaptive_k(1),
                          {StatKind::mean, StatKind::stddev, StatKind::skew,
                           StatKind::median});
    for (arma::uword i = 0; i < 6; ++i) {
        CHECK(out[0].values[i] == t.attribute("v")[i]);  // mean = own value
        CHECK(out[1].values[i] == 0.0);                  // std = 0
        CHECK(out[2].values[i] == 0.0);                  // skew zeroed...
        CHECK(out[2].degenerate[i] == 1);                // ...and flagged
        CHECK(out[3].values[i] == t.attribute("v")[i]);
    }
}

TEST_CASE("gw_summary: local mean stays inside the neighbor value range") {
    std::mt19937 rng(99);
    auto pts = random_points(rng, 30);
    std::vector<double> v(30);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (auto& x : v) x = u(rng);
    auto t = with_variable(pts, v);
    auto dist = build_distance_matrix(t);

    auto out = gw_summary(t, "v", kBisqAdaptive, Bandwidth::adaptive_k(9),
                          {StatKind::mean});
    for (std::size_t i = 0; i < 30; ++i) {
        auto w = weights_at(dist, i, kBisqAdaptive, Bandwidth::adaptive_k(9));
        double lo = arma::datum::inf, hi = -arma::datum::inf;
        for (std::size_t j = 0; j < 30; ++j)
            if (w[j] > 0.0) {
                lo = std::min(lo, v[j]);
                hi = std::max(hi, v[j]);
            }
        CHECK(out[0].values[i] >= lo - 1e-12);
        CHECK(out[0].values[i] <= hi + 1e-12);
    }
}

TEST_CASE("gw_summary: shift and scale equivariance") {
    std::mt19937 rng(123);
    auto pts = random_points(rng, 20);
    std::vector<double> v(20);
    std::normal_distribution<double> g(5.0, 2.0);
    for (auto& x : v) x = g(rng);

    auto base = gw_summary(with_variable(pts, v), "v", kBisqAdaptive,
                           Bandwidth::adaptive_k(8),
                           {StatKind::mean, StatKind::stddev, StatKind::skew});

    std::vector<double> shifted(v);
    for (auto& x : shifted) x += 11.5;
    auto sh = gw_summary(with_variable(pts, shifted), "v", kBisqAdaptive,
                         Bandwidth::adaptive_k(8),
                         {StatKind::mean, StatKind::stddev, StatKind::skew});
    for (arma::uword i = 0; i < 20; ++i) {
        CHECK(std::abs(sh[0].values[i] - (base[0].values[i] + 11.5)) <= 1e-10);
        CHECK(std::abs(sh[1].values[i] - base[1].values[i]) <= 1e-10);
        CHECK(std::abs(sh[2].values[i] - base[2].values[i]) <= 1e-10);
    }

    std::vector<double> scaled(v);
    for (auto& x : scaled) x *= 2.5;
    auto sc = gw_summary(with_variable(pts, scaled), "v", kBisqAdaptive,
                         Bandwidth::adaptive_k(8),
                         {StatKind::mean, StatKind::stddev, StatKind::skew});
    for (arma::uword i = 0; i < 20; ++i) {
        CHECK(sc[0].values[i] == doctest::Approx(2.5 * base[0].values[i]).epsilon(1e-10));
        CHECK(sc[1].values[i] == doctest::Approx(2.5 * base[1].values[i]).epsilon(1e-10));
        CHECK(sc[2].values[i] == doctest::Approx(base[2].values[i]).epsilon(1e-8));
    }
}

TEST_CASE("gw_summary: weighted median satisfies the cumulative-weight rule") {
    std::mt19937 rng(2468);
    auto pts = random_points(rng, 15);
    std::vector<double> v(15);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (auto& x : v) x = u(rng);
    auto t = with_variable(pts, v);
    auto dist = build_distance_matrix(t);

    auto out = gw_summary(t, "v", kBisqAdaptive, Bandwidth::adaptive_k(7),
                          {StatKind::median});
    for (std::size_t i = 0; i < 15; ++i) {
        auto w = weights_at(dist, i, kBisqAdaptive, Bandwidth::adaptive_k(7));
        const double med = out[0].values[i];
        const double total = arma::accu(w);
        double below = 0.0, upto = 0.0;
        for (std::size_t j = 0; j < 15; ++j) {
            if (w[j] <= 0.0) continue;
            if (v[j] < med) below += w[j];
            if (v[j] <= med) upto += w[j];
        }
        CHECK(below < 0.5 * total);
        CHECK(upto >= 0.5 * total);
    }
}

TEST_CASE("gw_summary: unknown variable and empty stat list are rejected") {
    std::mt19937 rng(1);
    auto t = with_variable(random_points(rng, 5), {1, 2, 3, 4, 5});
    CHECK_THROWS_AS(gw_summary(t, "nope", kBisqAdaptive, Bandwidth::adaptive_k(3),
                               {StatKind::mean}),
                    config_error);
    CHECK_THROWS_AS(gw_summary(t, "v", kBisqAdaptive, Bandwidth::adaptive_k(3), {}),
                    invalid_input);
}
