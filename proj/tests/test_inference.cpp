#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hbnum/inference.hpp"
#include "hbnum/random.hpp"
#include "hbnum/special_functions.hpp"
#include "oracles.hpp"

using namespace hbnum;

namespace {

std::vector<double> normal_draws(std::size_t n, double mean, double sd, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal(mean, sd);
    return v;
}

}  // namespace

TEST_SUITE("hpdi") {
    TEST_CASE("worked examples") {
        const std::vector<double> s{0, 1, 2, 3, 10};
        const auto h = hpdi(s, 0.6);
        CHECK(h.lower == 0.0);
        CHECK(h.upper == 2.0);
        std::vector<double> grid(100);
        for (std::size_t k = 0; k < 100; ++k) grid[k] = static_cast<double>(k);
        const auto g = hpdi(grid, 0.95);
        CHECK(g.lower == 0.0);
        CHECK(g.upper == 94.0);
    }

    TEST_CASE("standard normal 95%") {
        const auto h = hpdi(normal_draws(100000, 0.0, 1.0, 17), 0.95);
        CHECK(std::fabs(h.lower + 1.96) < 0.05);
        CHECK(std::fabs(h.upper - 1.96) < 0.05);
    }

    TEST_CASE("equals the brute-force window search") {
        Rng rng(31);
        for (int rep = 0; rep < 60; ++rep) {
            const auto n = static_cast<std::size_t>(rng.uniform(2, 400));
            std::vector<double> s(n);
            for (auto& x : s) x = rep % 3 == 0 ? std::round(rng.uniform(0, 10)) : rng.normal(0, 1) * rng.uniform(0.1, 5);
            const double mass = rng.uniform(0.05, 0.99);
            const auto h = hpdi(s, mass);
            const auto o = testing::brute_force_hpdi(s, mass);
            CHECK(h.lower == o.first);
            CHECK(h.upper == o.second);
            const auto inside = std::count_if(s.begin(), s.end(), [&](double x) { return h.contains(x); });
            CHECK(static_cast<double>(inside) >= mass * n);
        }
    }

    TEST_CASE("width grows with mass") {
        const auto s = normal_draws(3000, 2.0, 3.0, 8);
        double prev = -1.0;
        for (double mass = 0.05; mass < 1.0; mass += 0.05) {
            const double w = hpdi(s, mass).width();
            CHECK(w >= prev);
            prev = w;
        }
    }

    TEST_CASE("invalid input") {
        const std::vector<double> one{1};
        const std::vector<double> two{1, 2};
        CHECK_THROWS_AS(hpdi(one, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(hpdi(two, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(hpdi(two, 0.0), std::invalid_argument);
    }
}

TEST_SUITE("kde") {
    TEST_CASE("silverman bandwidth") {
        CHECK(silverman_bandwidth(1.0, 1.34, 100) == doctest::Approx(0.9 * std::pow(100.0, -0.2)));
        CHECK(silverman_bandwidth(1.0, 1.34, 100) == doctest::Approx(0.358).epsilon(0.001));
        CHECK(silverman_bandwidth(2.0, 1.34, 100) == doctest::Approx(0.358).epsilon(0.001));
        CHECK(silverman_bandwidth(0.5, 0.0, 100) == doctest::Approx(0.9 * 0.5 * std::pow(100.0, -0.2)));
    }

    TEST_CASE("density near the standard normal pdf") {
        const auto s = normal_draws(100000, 0.0, 1.0, 3);
        CHECK(std::fabs(kde_density(s, 0.0) - 0.3989) < 0.03 * 0.3989);
    }

    TEST_CASE("integrates to one") {
        const auto s = normal_draws(2000, 1.0, 2.0, 4);
        const KernelDensity kde(s);
        const double lo = kde.min() - 10 * kde.bandwidth();
        const double hi = kde.max() + 10 * kde.bandwidth();
        const int n = 4000;
        const double step = (hi - lo) / n;
        double area = 0.5 * (kde(lo) + kde(hi));
        for (int k = 1; k < n; ++k) area += kde(lo + k * step);
        CHECK(std::fabs(area * step - 1.0) < 1e-2);
    }

    TEST_CASE("degenerate samples") {
        const std::vector<double> flat{3, 3, 3};
        CHECK_THROWS_AS(kde_density(flat, 3.0), DegenerateSampleError);
        CHECK_THROWS_AS(posterior_mode(flat), DegenerateSampleError);
        const std::vector<double> single{1};
        CHECK_THROWS_AS(KernelDensity{single}, DegenerateSampleError);
    }

    TEST_CASE("curve spans the padded range") {
        const std::vector<double> s{-1, 0, 1};
        const KernelDensity kde(s);
        const auto c = density_curve(kde, 512);
        REQUIRE(c.x.size() == 512);
        CHECK(c.x.front() == doctest::Approx(-1 - 3 * kde.bandwidth()));
        CHECK(c.x.back() == doctest::Approx(1 + 3 * kde.bandwidth()));
    }
}

TEST_SUITE("mode and tails") {
    TEST_CASE("mode of a normal sample") {
        const auto s = normal_draws(100000, -11.5, 2.12, 6);
        CHECK(std::fabs(posterior_mode(s) + 11.5) < 0.1);
    }

    TEST_CASE("symmetric three points") {
        // An even-sized grid straddles 0, so the argmax is one of the two nodes half a step away.
        const std::vector<double> s{-1, 0, 1};
        const auto curve = density_curve(KernelDensity(s), 512);
        const double step = curve.x[1] - curve.x[0];
        CHECK(std::fabs(posterior_mode(s)) <= 0.5 * step * (1 + 1e-9));
    }

    TEST_CASE("translation equivariance") {
        auto s = normal_draws(500, 0.0, 1.0, 10);
        const double m = posterior_mode(s);
        for (auto& x : s) x += 37.25;
        CHECK(posterior_mode(s) == doctest::Approx(m + 37.25).epsilon(1e-9));
    }

    TEST_CASE("near the median for symmetric unimodal samples") {
        auto s = normal_draws(20000, 4.0, 1.5, 12);
        const KernelDensity kde(s);
        const auto curve = density_curve(kde, 512);
        const double step = curve.x[1] - curve.x[0];
        std::sort(s.begin(), s.end());
        CHECK(std::fabs(posterior_mode(s) - quantile_sorted(s, 0.5)) <= step + 0.1);
    }

    TEST_CASE("tail probability") {
        const std::vector<double> neg{-3, -2, -1};
        CHECK(tail_prob(neg, 0.0) == 1.0);
        const std::vector<double> pm{-1, 1};
        CHECK(tail_prob(pm, 0.0) == 0.5);
        CHECK(tail_prob(pm, -1.0) == 0.0);
        CHECK(tail_prob(pm, std::numeric_limits<double>::infinity()) == 1.0);
        CHECK(tail_prob(normal_draws(100000, -11.5, 2.12, 13), 0.0) > 0.999);
    }

    TEST_CASE("tail probability is monotone") {
        const auto s = normal_draws(1000, 0.0, 1.0, 14);
        double prev = 0.0;
        for (double t = -4; t <= 4; t += 0.25) {
            const double p = tail_prob(s, t);
            CHECK(p >= prev);
            prev = p;
        }
    }
}

TEST_SUITE("savage dickey") {
    TEST_CASE("strong evidence against zero") {
        const auto s = normal_draws(100000, -11.5, 2.12, 21);
        const auto r = savage_dickey_bf(s, 0.025);
        CHECK(r.bf10 > 3.2e5 / 2);
        CHECK(r.bf10 < 3.2e5 * 2);
        CHECK(r.method == DensityMethod::NormalApprox);
        CHECK(r.bf10 == doctest::Approx(r.prior_density_at_null / r.posterior_density_at_null));
    }

    TEST_CASE("null-centred posterior") {
        const auto r = savage_dickey_bf(normal_draws(100000, 0.0, 1.0, 22), 0.025);
        CHECK(std::fabs(r.bf10 - 0.0627) < 0.1 * 0.0627);
        const auto k = savage_dickey_bf(normal_draws(100000, 0.0, 1.0, 22), 0.025, DensityMethod::Kde);
        CHECK(std::fabs(k.bf10 - 0.0627) < 0.1 * 0.0627);
    }

    TEST_CASE("underflow is flagged") {
        const auto r = savage_dickey_bf(normal_draws(1000, -500.0, 1.0, 23), 0.025);
        CHECK(r.posterior_underflow);
        CHECK(std::isinf(r.bf10));
        const auto k = savage_dickey_bf(normal_draws(1000, -500.0, 1.0, 23), 0.025, DensityMethod::Kde);
        CHECK(k.posterior_underflow);
    }

    TEST_CASE("permutation invariance") {
        auto s = normal_draws(5000, -3.0, 1.0, 24);
        const double before = savage_dickey_bf(s, 0.025).bf10;
        std::reverse(s.begin(), s.end());
        std::rotate(s.begin(), s.begin() + 1234, s.end());
        CHECK(savage_dickey_bf(s, 0.025).bf10 == doctest::Approx(before).epsilon(1e-12));
    }

    TEST_CASE("method names") {
        CHECK(to_string(DensityMethod::Kde) == "kde");
        CHECK(density_method_from_string("normal") == DensityMethod::NormalApprox);
        CHECK_THROWS(density_method_from_string("spline"));
    }
}

TEST_SUITE("summaries") {
    TEST_CASE("summarize_samples") {
        const auto s = normal_draws(20000, -2.0, 1.0, 30);
        const auto sum = summarize_samples("b", s);
        CHECK(sum.parameter == "b");
        CHECK(sum.mean == doctest::Approx(-2.0).epsilon(0.02));
        CHECK(sum.sd == doctest::Approx(1.0).epsilon(0.02));
        CHECK(sum.hpdi.contains(sum.mode));
        CHECK(sum.p_below_zero == doctest::Approx(normal_cdf(2.0)).epsilon(0.01));
        const std::vector<double> flat{4, 4, 4};
        CHECK(summarize_samples("sigma2", flat).mode == 4.0);
    }

    TEST_CASE("sample helpers") {
        const std::vector<double> v{1, 2, 3, 4};
        CHECK(sample_mean(v) == 2.5);
        CHECK(sample_sd(v) == doctest::Approx(std::sqrt(5.0 / 3.0)));
        CHECK(quantile_sorted(v, 0.5) == 2.5);
        CHECK(quantile_sorted(v, 0.25) == 1.75);
        CHECK(quantile_sorted(v, 1.0) == 4.0);
    }
}
