#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "hbnum/random.hpp"
#include "hbnum/rca.hpp"

using namespace hbnum;

TEST_CASE("ols on exact and worked data") {
    const std::vector<double> x{0, 1, 2, 5};
    std::vector<double> y;
    for (double v : x) y.push_back(2 - 3 * v);
    auto f = ols_fit(x, y);
    CHECK(f.slope == doctest::Approx(-3.0));
    CHECK(f.intercept == doctest::Approx(2.0));
    CHECK(f.residual_sd == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.n == 4);

    const std::vector<double> x2{1, 2, 8, 9};
    const std::vector<double> y2{1, 1, -1, -1};
    f = ols_fit(x2, y2);
    CHECK(f.slope == doctest::Approx(-0.28));
    CHECK(f.intercept == doctest::Approx(1.4));
}

TEST_CASE("ols degenerate designs") {
    const std::vector<double> x{4, 4, 4};
    const std::vector<double> y{1, 2, 3};
    CHECK_THROWS_AS(ols_fit(x, y), DegenerateDesignError);
    const std::vector<double> one{1};
    CHECK_THROWS_AS(ols_fit(one, one), DegenerateDesignError);
    const std::vector<double> two{1, 2};
    CHECK_THROWS_AS(ols_fit(two, y), std::invalid_argument);
}

TEST_CASE("ols equivariance") {
    Rng rng(5);
    const std::vector<double> x{1, 2, 8, 9};
    std::vector<double> y(4);
    for (auto& v : y) v = rng.normal(0, 10);
    const auto base = ols_fit(x, y);
    std::vector<double> scaled;
    std::vector<double> shifted;
    for (double v : y) {
        scaled.push_back(-2.5 * v);
        shifted.push_back(v + 40.0);
    }
    CHECK(ols_fit(x, scaled).slope == doctest::Approx(-2.5 * base.slope));
    const auto s = ols_fit(x, shifted);
    CHECK(s.slope == doctest::Approx(base.slope));
    CHECK(s.intercept == doctest::Approx(base.intercept + 40.0));
}

TEST_CASE("per-subject slopes") {
    RegressionData d;
    const double a[] = {-50, 0, 120};
    for (std::size_t i = 0; i < 3; ++i) {
        for (double x : {1, 2, 8, 9}) d.add("p" + std::to_string(i), x, a[i] - 10 * x);
    }
    const auto slopes = rca_slopes(d);
    REQUIRE(slopes.size() == 3);
    for (double s : slopes) CHECK(s == doctest::Approx(-10.0));

    d.add("lonely", 1, 5);
    try {
        rca_slopes(d);
        FAIL("expected a degenerate design");
    } catch (const DegenerateDesignError& e) {
        CHECK(std::string(e.what()).find("lonely") != std::string::npos);
    }
}

TEST_CASE("one-sample t") {
    const std::vector<double> sym{-1, 0, 1};
    auto r = one_sample_t(sym);
    CHECK(r.t == 0.0);
    CHECK(r.p == doctest::Approx(1.0));
    CHECK(r.df == 2);

    const std::vector<double> v{1, 2, 3};
    r = one_sample_t(v);
    CHECK(r.t == doctest::Approx(3.4641016).epsilon(1e-7));
    CHECK(r.df == 2);
    CHECK(r.p == doctest::Approx(0.0741799).epsilon(1e-5));

    const std::vector<double> doubled{2, 4, 6};
    const auto d = one_sample_t(doubled);
    CHECK(d.t == doctest::Approx(r.t));
    CHECK(d.p == doctest::Approx(r.p));

    const std::vector<double> neg{-1, -2, -3};
    CHECK(one_sample_t(neg).p == doctest::Approx(r.p));
    CHECK(one_sample_t(neg).t == doctest::Approx(-r.t));

    const std::vector<double> flat{2, 2, 2};
    CHECK_THROWS_AS(one_sample_t(flat), DegenerateDesignError);
}

TEST_CASE("two-sided p for the reported t(14)") {
    // Sample whose t statistic is -1.82 with 14 df.
    std::vector<double> v(15);
    for (std::size_t k = 0; k < 15; ++k) v[k] = static_cast<double>(k) - 7.0;
    double ss = 0.0;
    for (double x : v) ss += x * x;
    const double se = std::sqrt(ss / 14.0) / std::sqrt(15.0);
    for (auto& x : v) x -= 1.82 * se;
    const auto r = one_sample_t(v);
    CHECK(r.t == doctest::Approx(-1.82));
    CHECK(r.p == doctest::Approx(0.0902).epsilon(1e-3));
}

TEST_CASE("confidence interval") {
    const std::vector<double> v{1, 2, 3};
    const auto ci = mean_ci(v, 0.95);
    CHECK(ci.lower == doctest::Approx(-0.484).epsilon(1e-3));
    CHECK(ci.upper == doctest::Approx(4.484).epsilon(1e-3));
    CHECK(ci.contains(2.0));
    CHECK(mean_ci(v, 0.99).width() > ci.width());

    const std::vector<double> flat{7, 7, 7};
    const auto c = mean_ci(flat, 0.95);
    CHECK(c.lower == 7.0);
    CHECK(c.upper == 7.0);
}

TEST_CASE("interval coverage at the true mean") {
    Rng rng(77);
    int covered = 0;
    const int reps = 4000;
    for (int r = 0; r < reps; ++r) {
        std::vector<double> v(8);
        for (auto& x : v) x = rng.normal(-10.0, 3.0);
        covered += mean_ci(v, 0.95).contains(-10.0) ? 1 : 0;
    }
    // Binomial sd is about 0.0034.
    CHECK(std::fabs(covered / static_cast<double>(reps) - 0.95) < 0.015);
}

TEST_CASE("slopes table") {
    std::ostringstream out;
    const std::vector<double> slopes{-1.5, 2};
    write_slopes_csv(out, {"a", "b"}, slopes);
    CHECK(out.str() == "subject,slope\na,-1.5\nb,2\n");
}
