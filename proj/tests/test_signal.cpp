#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "windup/rng.hpp"
#include "windup/signal.hpp"

using namespace windup;

TEST_CASE("savgol reproduces low-degree polynomials") {
    Series constant(50, 5.0);
    const Series sc = savgol_smooth(constant, 21, 3);
    for (const double v : sc) CHECK(v == doctest::Approx(5.0).epsilon(1e-12));

    Series ramp(50);
    for (int i = 0; i < 50; ++i) ramp[i] = static_cast<double>(i);
    const Series sr = savgol_smooth(ramp, 21, 3);
    for (int i = 10; i < 40; ++i) CHECK(sr[i] == doctest::Approx(ramp[i]).epsilon(1e-12));

    Series cubic(80);
    for (int i = 0; i < 80; ++i) {
        const double t = i - 40.0;
        cubic[i] = 0.5 * t * t * t - 2.0 * t * t + 3.0 * t - 7.0;
    }
    const Series scu = savgol_smooth(cubic, 21, 3);
    for (int i = 10; i < 70; ++i) CHECK(scu[i] == doctest::Approx(cubic[i]).epsilon(1e-10));
}

TEST_CASE("savgol parameter validation") {
    Series s(30, 1.0);
    CHECK_THROWS_AS(savgol_smooth(s, 20, 3), std::invalid_argument);  // even window
    CHECK_THROWS_AS(savgol_smooth(s, 3, 3), std::invalid_argument);   // window <= order
    CHECK_THROWS_AS(savgol_smooth(Series(10, 1.0), 21, 3), std::invalid_argument);  // short
}

TEST_CASE("savgol interior matches per-window least-squares oracle") {
    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 40 + static_cast<int>(rng.next_below(60));
        Series s(n);
        for (int i = 0; i < n; ++i) s[i] = rng.uniform(-10, 10);
        const Series smooth = savgol_smooth(s, 21, 3);
        for (int i = 10; i + 10 < n; ++i) {
            std::vector<double> window(s.begin() + i - 10, s.begin() + i + 11);
            CHECK(std::abs(smooth[i] - oracle::polyfit_center(window, 3)) < 1e-9);
        }
    }
}

TEST_CASE("savgol commutes with affine transforms") {
    Rng rng(123);
    Series s(60);
    for (auto& v : s) v = rng.uniform(-5, 5);
    const double a = 2.5, b = -1.25;
    Series t(s);
    for (auto& v : t) v = a * v + b;
    const Series ss = savgol_smooth(s, 21, 3);
    const Series st = savgol_smooth(t, 21, 3);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(st[i] == doctest::Approx(a * ss[i] + b).epsilon(1e-10));
    }
}

TEST_CASE("derivative stencils") {
    Series ramp(20);
    for (int i = 0; i < 20; ++i) ramp[i] = 2.0 * i;
    for (const double v : derivative(ramp)) CHECK(v == doctest::Approx(2.0));

    Series constant(10, 3.0);
    for (const double v : derivative(constant)) CHECK(v == doctest::Approx(0.0));

    Series quad(30);
    for (int i = 0; i < 30; ++i) quad[i] = static_cast<double>(i) * i;
    const Series d = derivative(quad);
    for (int i = 1; i < 29; ++i) CHECK(d[i] == doctest::Approx(2.0 * i).epsilon(1e-12));

    CHECK_THROWS_AS(derivative(Series{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("derivative of smoothed constant is zero") {
    const Series d = derivative(savgol_smooth(Series(40, 2.5), 21, 3));
    for (const double v : d) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("local_minima strict and plateau cases") {
    CHECK(local_minima({3, 1, 3}) == std::vector<std::size_t>{1});
    CHECK(local_minima({1, 2, 3, 4}).empty());
    CHECK(local_minima({3, 1, 1, 3}) == std::vector<std::size_t>{1});
    CHECK(local_minima({3, 1, 1, 0, 2}) == std::vector<std::size_t>{3});
    CHECK(local_minima({5, 4, 4, 4, 4}).empty());  // plateau runs into the edge
    CHECK(local_minima({2, 1, 2, 1, 2}) == std::vector<std::size_t>{1, 3});
}

TEST_CASE("argmax_in_range first-of-ties and errors") {
    const Series s{0, 5, 5, 2};
    CHECK(argmax_in_range(s, 0, 3) == 1);
    CHECK(argmax_in_range(s, 2, 2) == 2);
    CHECK_THROWS_AS(argmax_in_range(s, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(argmax_in_range(s, 0, 4), std::invalid_argument);

    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        Series r(30);
        for (auto& v : r) v = rng.uniform(0, 1);
        const std::size_t lo = rng.next_below(30);
        const std::size_t hi = lo + rng.next_below(30 - lo);
        // Linear-scan reference.
        std::size_t best = lo;
        for (std::size_t i = lo; i <= hi; ++i) {
            if (r[i] > r[best]) best = i;
        }
        CHECK(argmax_in_range(r, lo, hi) == best);
    }
}
