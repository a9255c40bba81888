#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

#include "satolab/error.hpp"
#include "satolab/measures.hpp"
#include "satolab/quadrature.hpp"
#include "satolab/rng.hpp"
#include "satolab/sampler.hpp"

using namespace satolab;

namespace {

RootSystem rs_of(const char* name) { return build_root_system(GroupType::parse(name)); }
Weight w(std::initializer_list<Int> c) { return Weight::from_coords(c); }
constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("substreams are reproducible and distinct") {
  auto a = substream(42, 3), b = substream(42, 3), c = substream(42, 4), d = substream(43, 3);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 16; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs_c |= x != c();
    differs_d |= x != d();
  }
  CHECK(differs_c);
  CHECK(differs_d);
  Philox4x32 g(1);
  double lo = 1, hi = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = g.uniform01();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
}

TEST_CASE("compensated sums are order-exact for a cancelling sequence") {
  CompensatedSum<double> s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}

TEST_CASE("trapezoid rule on the torus is exact below Nyquist") {
  const auto c2 = rs_of("C2");
  const TorusQuadrature q(c2, 11);
  CHECK(q.max_frequency() == 5);
  for (int a = -5; a <= 5; ++a) {
    const Complex v = q.integrate_complex([a](std::span<const double> th) { return std::polar(1.0, a * th[0] + 2.0 * th[1]); });
    CHECK(std::abs(v) < 1e-14);
  }
  CHECK(q.integrate([](std::span<const double>) { return 1.0; }) == doctest::Approx(1.0));
  CHECK_THROWS_AS(q.require_bandwidth(6, "test"), NumericalGuardError);
  CHECK_THROWS_AS(TorusQuadrature(c2, 10), ValidationError);
}

TEST_CASE("quadrature is independent of the thread count") {
  const auto g2 = rs_of("G2");
  const auto q = TorusQuadrature::for_bandwidth(g2, density_bandwidth(g2));
  auto f = [&](std::span<const double> th) { return st_density(g2, th) * std::cos(th[0]); };
  CHECK(q.integrate(f, 1) == q.integrate(f, 3));
}

TEST_CASE("Sato-Tate density examples") {
  const auto c2 = rs_of("C2");
  const double t1 = 0.7, t2 = 2.1;
  const std::complex<double> i(0, 1);
  const double closed_form = std::norm((1.0 - std::exp(2.0 * i * t1)) * (1.0 - std::exp(2.0 * i * t2)) *
                                 (1.0 - std::exp(i * (t1 - t2))) * (1.0 - std::exp(i * (t1 + t2))));
  CHECK(st_density(c2, std::vector<double>{t1, t2}) == doctest::Approx(closed_form).epsilon(1e-12));
  CHECK(st_density(c2, std::vector<double>{0.0, 0.0}) == 0.0);

  const auto g2 = rs_of("G2");
  const double six = std::norm((1.0 - std::exp(i * (t1 - t2))) * (1.0 - std::exp(i * (-t1 + 2 * t2))) *
                               (1.0 - std::exp(i * (2 * t1 - t2))) * (1.0 - std::exp(i * t1)) *
                               (1.0 - std::exp(i * t2)) * (1.0 - std::exp(i * (t1 + t2))));
  CHECK(st_density(g2, std::vector<double>{t1, t2}) == doctest::Approx(six).epsilon(1e-12));

  for (const char* name : {"A2", "B3", "G2"}) {
    const auto rs = rs_of(name);
    const auto t = torus_point(rs, std::vector<double>(rs.rank(), 0.0));
    std::vector<double> th(static_cast<std::size_t>(rs.rank()));
    for (int j = 0; j < rs.rank(); ++j) th[static_cast<std::size_t>(j)] = 0.3 + 0.77 * j;
    CHECK(st_density(rs, th) == doctest::Approx(std::norm(weyl_denominator(rs, torus_point(rs, th)))).epsilon(1e-9));
    CHECK(st_density(rs, t) == 0.0);
  }
}

TEST_CASE("Plancherel density examples") {
  const auto a1 = rs_of("A1");
  // The A1 root acts as 2 theta, so the two-factor ratio 16/9 sits at theta = pi/2.
  CHECK(plancherel_density(a1, 2, std::vector<double>{kPi / 2}) == doctest::Approx(16.0 / 9.0));
  CHECK(plancherel_density(a1, 2, std::vector<double>{kPi}) == doctest::Approx(0.0));
  CHECK(plancherel_density(a1, 7, std::vector<double>{0.0}) == 0.0);
  CHECK_THROWS_AS(plancherel_density(a1, 1, std::vector<double>{0.3}), ValidationError);
  const auto c2 = rs_of("C2");
  const std::vector<double> th{0.4, 1.9};
  CHECK(plancherel_density(c2, 1000003, th) == doctest::Approx(st_density(c2, th)).epsilon(1e-5));
  for (double a = 0; a < 6.3; a += 0.1) CHECK(plancherel_density(c2, 3, std::vector<double>{a, 2 * a}) >= -1e-12);
}

TEST_CASE("normalization: Weyl integration identity and Plancherel convergence") {
  for (const char* name : {"C2", "G2", "A2", "B3"}) {
    const auto rs = rs_of(name);
    const auto q = TorusQuadrature::for_bandwidth(rs, density_bandwidth(rs));
    const auto d = normalize(MeasureDensity::sato_tate(rs), q);
    CHECK(d.normalization() == doctest::Approx(1.0 / static_cast<double>(rs.weyl_order())).epsilon(1e-12));
    CHECK(q.integrate([&](std::span<const double> th) { return d(th); }) == doctest::Approx(1.0).epsilon(1e-9));
  }
  const auto c2 = rs_of("C2");
  const auto q = TorusQuadrature::for_bandwidth(c2, density_bandwidth(c2));
  CHECK_THROWS_AS(normalize(MeasureDensity::sato_tate(c2), TorusQuadrature(c2, 5)), NumericalGuardError);
  const auto p = normalize(MeasureDensity::plancherel(c2, 101), q);
  CHECK(std::abs(p.normalization() * 8.0 - 1.0) < 0.05);
  const TorusQuadrature fine(c2, 201);
  CHECK(fine.integrate([&](std::span<const double> th) { return p(th); }) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("inner products and moments") {
  const auto c2 = rs_of("C2");
  const auto q = TorusQuadrature::for_bandwidth(c2, 2 * 2 + density_bandwidth(c2));
  const auto e1 = CharExpansion::single(w({1, 0}));
  const auto e12 = CharExpansion::single(w({1, 1}));
  CHECK(std::abs(inner_product(c2, q, e1, e1) - 1.0) < 1e-9);
  CHECK(std::abs(inner_product(c2, q, e1, e12)) < 1e-9);
  const TorusFunction one = [](std::span<const double>) { return Complex(1.0); };
  CHECK(std::abs(inner_product(c2, q, one, one) - 1.0) < 1e-12);
  const TorusFunction f = [&](std::span<const double> th) { return char_value(c2, w({1, 0}), torus_point(c2, {th[0], th[1]})) + Complex(0, 0.5); };
  const TorusFunction g = [&](std::span<const double> th) { return char_value(c2, w({2, 0}), torus_point(c2, {th[0], th[1]})) * 2.0; };
  CHECK(std::abs(inner_product(c2, q, f, g) - std::conj(inner_product(c2, q, g, f))) < 1e-12);
  const TorusFunction bad = [](std::span<const double> th) { return Complex(std::cos(th[0])); };
  CHECK_THROWS_AS(inner_product(c2, q, bad, one), ValidationError);
  CHECK_THROWS_AS(inner_product(c2, TorusQuadrature(c2, 7), e1, CharExpansion::single(w({3, 3}))), NumericalGuardError);

  auto m = character_moments(c2, q, e1);
  CHECK(std::abs(m.first) < 1e-9);
  CHECK(m.second == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(m.re_sq == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(m.im_sq) < 1e-9);
  CHECK(std::abs(m.square_no_conj - 1.0) < 1e-9);

  const auto a2 = rs_of("A2");
  const auto qa = TorusQuadrature::for_bandwidth(a2, 2 * 1 + density_bandwidth(a2));
  m = character_moments(a2, qa, CharExpansion::single(a2.fundamental_weights()[0]));
  CHECK(std::abs(m.first) < 1e-9);
  CHECK(m.second == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(m.re_sq == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(m.im_sq == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(m.square_no_conj) < 1e-9);
  CHECK_THROWS_AS(character_moments(a2, qa, CharExpansion{}), ValidationError);
}

TEST_CASE("Plancherel sup-gap shrinks like 1/p") {
  const auto c2 = rs_of("C2");
  const auto q = TorusQuadrature::for_bandwidth(c2, density_bandwidth(c2));
  const auto st = normalize(MeasureDensity::sato_tate(c2), q);
  const TorusQuadrature grid(c2, 101);
  double prev = 0;
  for (Int p : {101, 211, 401}) {
    const auto pl = normalize(MeasureDensity::plancherel(c2, p), q);
    double gap = 0;
    std::vector<double> th(2);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      grid.node(i, th);
      const double s = st.unnormalized(th);
      if (s < 1e-8) continue;
      gap = std::max(gap, std::abs(pl(th) / st(th) - 1.0));
    }
    CHECK(gap * p > 1.0);
    CHECK(gap * p < 20.0);
    if (prev > 0) CHECK(prev / gap > 1.5);
    prev = gap;
  }
}

TEST_CASE("sampler moments, Plancherel bias and determinism") {
  const auto c2 = rs_of("C2");
  const auto q = TorusQuadrature::for_bandwidth(c2, 2 + density_bandwidth(c2));
  const auto st = normalize(MeasureDensity::sato_tate(c2), q);
  const std::size_t n = 1'000'000;
  const auto pts = sample(st, 2024, n, 2);
  CompensatedSum<double> s1, s2;
  for (const auto& t : pts) {
    const double x = 2 * std::cos(t.theta(0)) + 2 * std::cos(t.theta(1));
    s1.add(x);
    s2.add(x * x);
  }
  const double mean = s1.value() / n;
  const double var = s2.value() / n - mean * mean;
  CHECK(std::abs(mean) <= 0.004);
  CHECK(var >= 0.99);
  CHECK(var <= 1.01);

  const auto pl = normalize(MeasureDensity::plancherel(c2, 5), q);
  const auto ppts = sample(pl, 2025, n, 1);
  CompensatedSum<double> p1;
  for (const auto& t : ppts) p1.add(2 * std::cos(t.theta(0)) + 2 * std::cos(t.theta(1)));
  const double pmean = p1.value() / n;
  const TorusQuadrature fine(c2, 301);
  const double oracle = fine.integrate([&](std::span<const double> th) { return (2 * std::cos(th[0]) + 2 * std::cos(th[1])) * pl(th); });
  CHECK(std::abs(pmean) <= 0.25);
  CHECK(std::abs(pmean - oracle) < 4.0 / std::sqrt(static_cast<double>(n)) * 1.5);

  const auto a = sample(st, 7, 10000, 1);
  const auto b = sample(st, 7, 10000, 4);
  bool same = true;
  for (std::size_t i = 0; i < a.size(); ++i) same &= a[i].theta(0) == b[i].theta(0) && a[i].theta(1) == b[i].theta(1);
  CHECK(same);
  CHECK_THROWS_AS(sample(MeasureDensity::sato_tate(c2), 7, 10), ValidationError);  // not normalized
}

TEST_CASE("sampler chi-square goodness of fit at level 1e-3") {
  const auto c2 = rs_of("C2");
  const auto q = TorusQuadrature::for_bandwidth(c2, density_bandwidth(c2));
  const auto st = normalize(MeasureDensity::sato_tate(c2), q);
  const int cells = 8;
  const std::size_t n = 1'000'000;
  const double period = c2.angle_period();
  std::vector<double> counts(cells * cells, 0.0);
  for (const auto& t : sample(st, 99, n, 1)) {
    const int a = std::min(cells - 1, static_cast<int>(t.theta(0) / period * cells));
    const int b = std::min(cells - 1, static_cast<int>(t.theta(1) / period * cells));
    counts[static_cast<std::size_t>(a * cells + b)] += 1;
  }
  // Cell masses by a fine midpoint rule inside each cell.
  const int sub = 48;
  const double h = period / (cells * sub);
  double chi2 = 0;
  int dof = -1;
  for (int a = 0; a < cells; ++a) {
    for (int b = 0; b < cells; ++b) {
      double mass = 0;
      for (int i = 0; i < sub; ++i) {
        for (int j = 0; j < sub; ++j) {
          const std::vector<double> th{(a * sub + i + 0.5) * h, (b * sub + j + 0.5) * h};
          mass += st(th);
        }
      }
      mass *= (h / period) * (h / period);
      const double expected = mass * static_cast<double>(n);
      if (expected < 5) continue;
      const double d = counts[static_cast<std::size_t>(a * cells + b)] - expected;
      chi2 += d * d / expected;
      ++dof;
    }
  }
  const double critical = boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), 1e-3));
  INFO("chi2 = " << chi2 << ", dof = " << dof);
  CHECK(chi2 < critical);
}

TEST_CASE("sampler envelope covers the supremum") {
  const auto g2 = rs_of("G2");
  const auto q = TorusQuadrature::for_bandwidth(g2, density_bandwidth(g2));
  const TorusSampler s(normalize(MeasureDensity::sato_tate(g2), q));
  const TorusQuadrature fine(g2, 401);
  double best = 0;
  std::vector<double> th(2);
  for (std::size_t i = 0; i < fine.node_count(); ++i) {
    fine.node(i, th);
    best = std::max(best, s.density()(th));
  }
  CHECK(s.estimated_sup() >= best * (1 - 1e-9));
  CHECK(s.envelope() == doctest::Approx(1.05 * s.estimated_sup()));
}
