#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "special_functions.hpp"

using eb::std_normal_cdf;
using eb::std_normal_quantile;
using eb::student_t_cdf;

TEST_SUITE("std_normal_cdf") {
  TEST_CASE("center and tail anchors") {
    CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    // smallest attainable MCMC probability at A = 10^4 maps to -3.719
    CHECK(std_normal_cdf(-3.719) == doctest::Approx(0.0001).epsilon(0).scale(0));
    CHECK(std::fabs(std_normal_cdf(-3.719) - 0.0001) < 2e-6);
    CHECK(std::fabs(std_normal_cdf(1.959964) - 0.975) < 1e-6);
    CHECK(std::fabs(std_normal_cdf(1.959964) - oracle::normal_cdf(1.959964)) < 1e-13);
  }

  TEST_CASE("matches the series/quadrature oracle to 1e-12") {
    for (double x = -6.0; x <= 6.0; x += 0.173) {
      CHECK(std::fabs(std_normal_cdf(x) - oracle::normal_cdf(x)) < 1e-12);
    }
  }

  TEST_CASE("strictly increasing") {
    double prev = std_normal_cdf(-8.0);
    for (double x = -7.9; x <= 8.0; x += 0.1) {
      double cur = std_normal_cdf(x);
      CHECK(cur > prev);
      prev = cur;
    }
  }

  TEST_CASE("rejects non-finite input") {
    CHECK_THROWS_AS(std_normal_cdf(std::nan("")), eb::Error);
    CHECK_THROWS_AS(std_normal_cdf(INFINITY), eb::Error);
  }
}

TEST_SUITE("std_normal_quantile") {
  TEST_CASE("anchors") {
    CHECK(std_normal_quantile(0.5) == doctest::Approx(0.0).epsilon(0).scale(1));
    CHECK(std::fabs(std_normal_quantile(0.0001) - (-3.719)) < 0.001);
    CHECK(std::fabs(std_normal_quantile(0.975) - 1.959964) < 1e-6);
    CHECK(std::fabs(std_normal_quantile(0.975) - oracle::normal_quantile(0.975)) < 1e-9);
  }

  TEST_CASE("matches the bisection oracle to 1e-9") {
    for (double p : {1e-10, 1e-7, 1e-4, 0.01, 0.2, 0.4999, 0.5001, 0.9, 0.999, 1.0 - 1e-7}) {
      CHECK(std::fabs(std_normal_quantile(p) - oracle::normal_quantile(p)) < 1e-9);
    }
  }

  TEST_CASE("round-trips with the CDF within 1e-9") {
    eb::Rng rng(2024);
    for (int i = 0; i < 2000; ++i) {
      // log-uniform over [1e-10, 0.5], plus the mirrored upper half
      double p = std::pow(10.0, -10.0 * rng.uniform());
      if (p >= 1.0) continue;
      CHECK(std::fabs(std_normal_cdf(std_normal_quantile(p)) - p) < 1e-9);
      double q = 1.0 - p;
      if (q < 1.0) CHECK(std::fabs(std_normal_cdf(std_normal_quantile(q)) - q) < 1e-9);
    }
  }

  TEST_CASE("rejects p outside (0,1)") {
    CHECK_THROWS_AS(std_normal_quantile(0.0), eb::Error);
    CHECK_THROWS_AS(std_normal_quantile(1.0), eb::Error);
    CHECK_THROWS_AS(std_normal_quantile(-0.2), eb::Error);
    CHECK_THROWS_AS(std_normal_quantile(std::nan("")), eb::Error);
  }
}

TEST_SUITE("student_t_cdf") {
  TEST_CASE("symmetry point and Cauchy closed form") {
    for (unsigned nu : {1u, 2u, 7u, 30u, 200u}) CHECK(student_t_cdf(0.0, nu) == 0.5);
    // nu = 1 is Cauchy: F(1) = 1/2 + atan(1)/pi = 3/4
    CHECK(std::fabs(student_t_cdf(1.0, 1) - 0.75) < 1e-12);
  }

  TEST_CASE("matches the quadrature oracle") {
    CHECK(std::fabs(student_t_cdf(2.0, 10) - oracle::t_cdf(2.0, 10)) < 1e-8);
    for (unsigned nu : {1u, 3u, 10u, 28u, 100u}) {
      for (double t = -4.0; t <= 4.0; t += 0.7) {
        CHECK(std::fabs(student_t_cdf(t, nu) - oracle::t_cdf(t, nu)) < 1e-10);
      }
    }
  }

  TEST_CASE("symmetry F(t) + F(-t) = 1") {
    eb::Rng rng(7);
    for (int i = 0; i < 300; ++i) {
      double t = 8.0 * (rng.uniform() - 0.5);
      unsigned nu = 1 + static_cast<unsigned>(rng.uniform() * 60.0);
      CHECK(std::fabs(student_t_cdf(t, nu) + student_t_cdf(-t, nu) - 1.0) < 1e-10);
    }
  }

  TEST_CASE("converges to the normal CDF as nu grows") {
    for (double t = -4.0; t <= 4.0; t += 0.25) {
      CHECK(std::fabs(student_t_cdf(t, 200) - std_normal_cdf(t)) < 1e-3);
    }
  }

  TEST_CASE("monotone in t") {
    for (unsigned nu : {1u, 5u, 40u}) {
      double prev = student_t_cdf(-10.0, nu);
      for (double t = -9.75; t <= 10.0; t += 0.25) {
        double cur = student_t_cdf(t, nu);
        CHECK(cur > prev);
        prev = cur;
      }
    }
  }

  TEST_CASE("rejects nu = 0 and non-finite t") {
    CHECK_THROWS_AS(student_t_cdf(1.0, 0), eb::Error);
    CHECK_THROWS_AS(student_t_cdf(std::nan(""), 3), eb::Error);
  }
}

TEST_SUITE("percentile") {
  TEST_CASE("single element and exact midpoint") {
    std::vector<double> one = {5.0};
    CHECK(eb::percentile(one, 0.16) == 5.0);
    std::vector<double> ladder;
    for (int i = 1; i <= 101; ++i) ladder.push_back(i);
    CHECK(eb::percentile(ladder, 0.5) == 51.0);
    CHECK(eb::percentile(ladder, 0.0) == 1.0);
    CHECK(eb::percentile(ladder, 1.0) == 101.0);
  }

  TEST_CASE("interpolation rule h = q*(m-1)") {
    std::vector<double> two = {1.0, 3.0};
    CHECK(eb::percentile(two, 0.25) == doctest::Approx(1.5).epsilon(1e-15));
    std::vector<double> four = {0.0, 1.0, 2.0, 4.0};
    // h = 0.5*3 = 1.5 -> 1 + 0.5*(2-1)
    CHECK(eb::percentile(four, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
  }

  TEST_CASE("84th percentile of 1e5 normal draws matches the oracle quantile") {
    eb::Rng rng(99);
    std::vector<double> draws(100000);
    for (double& v : draws) v = rng.normal();
    double expected = oracle::normal_quantile(0.84);  // ~0.9945
    CHECK(std::fabs(eb::percentile(draws, 0.84) - expected) < 0.02);
  }

  TEST_CASE("monotone in q and affine equivariant") {
    eb::Rng rng(123);
    std::vector<double> v(257);
    for (double& x : v) x = rng.normal();
    double prev = eb::percentile(v, 0.0);
    for (double q = 0.05; q <= 1.0; q += 0.05) {
      double cur = eb::percentile(v, q);
      CHECK(cur >= prev);
      prev = cur;
    }
    std::vector<double> w(v.size());
    const double a = -2.5, b = 0.75;
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = a * v[i] + b;
    for (double q : {0.16, 0.5, 0.84}) {
      // negative slope flips the quantile position
      CHECK(eb::percentile(w, q) ==
            doctest::Approx(a * eb::percentile(v, 1.0 - q) + b).epsilon(1e-12));
    }
  }

  TEST_CASE("rejects empty input and bad q") {
    std::vector<double> empty;
    CHECK_THROWS_AS(eb::percentile(empty, 0.5), eb::Error);
    std::vector<double> one = {1.0};
    CHECK_THROWS_AS(eb::percentile(one, 1.5), eb::Error);
  }
}
