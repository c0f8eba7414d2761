#include <doctest.h>

#include <cmath>

#include "berglab/weights.hpp"

using namespace berglab;

TEST_CASE("tail of the constant weight") {
  RadialWeight w = RadialWeight::standard(0.0);
  CHECK(tail(w, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tail(w, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(tail(w, 1.0), std::domain_error);
}

TEST_CASE("tail of 1 - s^2 against the antiderivative") {
  RadialWeight w = RadialWeight::standard(1.0);
  // int_r^1 (1 - s^2) ds = (2 - 3r + r^3) / 3
  auto exact = [](double r) { return (2.0 - 3.0 * r + r * r * r) / 3.0; };
  CHECK(tail(w, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  for (double r : {0.1, 0.5, 0.9, 0.99}) {
    CHECK(tail(w, r) == doctest::Approx(exact(r)).epsilon(1e-10));
  }
}

TEST_CASE("tail vanishes monotonically toward the boundary") {
  for (auto w : {RadialWeight::standard(0.0), RadialWeight::standard(-0.5),
                 RadialWeight::log_type()}) {
    double prev = tail(w, 0.0);
    CHECK(prev > 0.0);
    for (double r : {0.3, 0.6, 0.9, 0.99, 0.999}) {
      double t = tail(w, r);
      CHECK(t >= 0.0);
      CHECK(t <= prev * (1.0 + 1e-12));
      prev = t;
    }
    CHECK(prev < 0.5 * tail(w, 0.0));
  }
}

TEST_CASE("cached tail table tracks the quadrature") {
  for (auto w : {RadialWeight::standard(1.0), RadialWeight::log_type()}) {
    for (double r : {0.0, 0.2, 0.55, 0.9, 0.99, 0.9999}) {
      CHECK(w.tail_fast(r) == doctest::Approx(tail(w, r)).epsilon(2e-4));
    }
  }
}

TEST_CASE("doubling constant of the constant weight is exactly 2") {
  DoublingReport rep = doubling_report(RadialWeight::standard(0.0));
  CHECK(rep.member);
  CHECK(rep.C == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("exponential weight is rejected") {
  DoublingReport rep = doubling_report(RadialWeight::exponential());
  CHECK_FALSE(rep.member);
}

TEST_CASE("alpha = 1 doubling constant against a dense scan") {
  DoublingReport rep = doubling_report(RadialWeight::standard(1.0));
  CHECK(rep.member);
  // Dense scan of (1-r^2)^2 / (1-((1+r)/2)^2)^2, an independent surrogate for
  // the tail ratio of this weight.
  double sup = 0.0;
  for (int i = 0; i < 200000; ++i) {
    double r = i / 200000.0 * 0.999;
    double mid = 0.5 * (1.0 + r);
    double v = std::pow((1.0 - r * r) / (1.0 - mid * mid), 2.0);
    sup = std::max(sup, v);
  }
  CHECK(rep.C == doctest::Approx(sup).epsilon(0.05));
}

TEST_CASE("tail doubling inequality holds with the reported exponent") {
  for (auto w : {RadialWeight::standard(0.0), RadialWeight::standard(1.0),
                 RadialWeight::log_type()}) {
    DoublingReport rep = doubling_report(w);
    REQUIRE(rep.member);
    for (double r : {0.0, 0.3, 0.7}) {
      for (double t : {0.7, 0.9, 0.99}) {
        if (r > t) continue;
        double lhs = tail(w, r);
        double rhs = rep.C * std::pow((1.0 - r) / (1.0 - t), rep.beta) * tail(w, t);
        CHECK(lhs <= rhs * (1.0 + 1e-6));
      }
    }
    // Moment bound with the reported gamma.
    for (double t : {0.5, 0.9}) {
      double lhs = integrate(
          [&](double s) {
            return std::pow((1.0 - t) / (1.0 - s), rep.gamma) * w(s);
          },
          0.0, t, 1e-10);
      CHECK(lhs <= rep.C * tail(w, t) * (1.0 + 1e-5));
    }
  }
}

TEST_CASE("Carleson square masses") {
  RadialWeight w = RadialWeight::standard(0.0);
  // (|I|/2pi) int_{0.5}^1 2s ds = (0.5)(0.75)/(2 pi)
  CHECK(region_mass(w, Square(Complex(0.5, 0.0))) ==
        doctest::Approx(0.5 * 0.75 / (2.0 * kPi)).epsilon(1e-10));
  CHECK(region_mass(w, Region{Tent{Complex(0.5, 0.0)}}) ==
        doctest::Approx(0.125 / kPi).epsilon(1e-10));
  // Vanishing squares toward the boundary.
  double prev = 1e300;
  for (double a : {0.9, 0.99, 0.999}) {
    double m = region_mass(w, Square(Complex(a, 0.0)));
    CHECK(m < prev);
    prev = m;
  }
  CHECK(prev < 1e-5);
  CHECK_THROWS_AS(Square(Complex(0.0, 0.0)), std::domain_error);
}

TEST_CASE("tent mass is continuous at the origin") {
  RadialWeight w = RadialWeight::standard(1.0);
  double at0 = region_mass(w, Region{Tent{Complex(0.0, 0.0)}});
  double near0 = region_mass(w, Region{Tent{Complex(1e-9, 0.0)}});
  CHECK(at0 == doctest::Approx(near0).epsilon(1e-6));
}

TEST_CASE("omega_star values and limits") {
  RadialWeight w = RadialWeight::standard(0.0);
  // int_{1/2}^1 s log(2s) ds = log(2)/2 - 3/16
  double exact = 0.5 * std::log(2.0) - 3.0 / 16.0;
  CHECK(omega_star(w, 0.5) == doctest::Approx(exact).epsilon(1e-10));
  CHECK(omega_star(w, 0.999) < 1e-5);
  CHECK_THROWS_AS(omega_star(w, 0.0), std::domain_error);
}

TEST_CASE("square, tent and omega_star masses are comparable near the boundary") {
  for (auto w : {RadialWeight::standard(0.0), RadialWeight::standard(1.0),
                 RadialWeight::standard(-0.5), RadialWeight::log_type()}) {
    for (double r : {0.5, 0.7, 0.9, 0.97, 0.99}) {
      Complex z(r, 0.0);
      double s = region_mass(w, Square(z));
      double t = region_mass(w, Region{Tent{z}});
      double st = omega_star(w, r);
      CHECK(s / t > 1.0 / 12.0);
      CHECK(s / t < 12.0);
      CHECK(t / st > 1.0 / 12.0);
      CHECK(t / st < 12.0);
    }
  }
}

TEST_CASE("omega_star to tent-mass ratio approaches pi") {
  RadialWeight w = RadialWeight::standard(0.0);
  double r = 0.9;
  double ratio = omega_star(w, r) / region_mass(w, Region{Tent{Complex(r, 0.0)}});
  CHECK(ratio == doctest::Approx(kPi).epsilon(0.1));
}

TEST_CASE("polar grid weights sum to the truncated area") {
  for (int depth : {4, 6, 8}) {
    PolarGrid g = PolarGrid::make(depth);
    double rM = g.outer_radius();
    CHECK(g.total_weight() == doctest::Approx(rM * rM).epsilon(1e-12));
    for (const auto& c : g.cells) {
      CHECK(std::abs(c.center) < 1.0);
      CHECK(std::abs(c.center) > 0.0);
    }
  }
}

TEST_CASE("grid quadrature of region masses converges under refinement") {
  RadialWeight w = RadialWeight::standard(1.0);
  Region disc{PseudoDisc{Complex(0.4, 0.2), 0.3}};
  PolarGrid g6 = PolarGrid::make(6);
  PolarGrid g7 = PolarGrid::make(7, 0.5, 2);
  double a = region_mass_grid(w, disc, g6);
  double b = region_mass_grid(w, disc, g7);
  CHECK(a == doctest::Approx(b).epsilon(0.05));
}

TEST_CASE("weight tables: interpolation and validation") {
  RadialWeight w = RadialWeight::from_table({0.0, 0.5, 0.9}, {1.0, 2.0, 0.5});
  CHECK(w(0.25) == doctest::Approx(1.5));
  CHECK(w(0.95) == doctest::Approx(0.5));  // constant extension
  CHECK_THROWS(RadialWeight::from_table({0.5, 0.4}, {1.0, 1.0}));
  CHECK_THROWS(RadialWeight::from_table({0.0, 1.0}, {1.0, 1.0}));
  CHECK_THROWS(RadialWeight::from_table({0.0, 0.5}, {1.0, -1.0}));
}

TEST_CASE("kernel integral tracks the tail estimate for the constant weight") {
  RadialWeight w = RadialWeight::standard(0.0);
  double lambda = 2.0;
  double lo = 1e300, hi = 0.0;
  for (double z : {0.6, 0.8, 0.95}) {
    double k = kernel_weight_integral(w, z, lambda);
    double ref = tail(w, z) / std::pow(1.0 - z, lambda);
    lo = std::min(lo, k / ref);
    hi = std::max(hi, k / ref);
  }
  CHECK(hi / lo < 4.0);
}
