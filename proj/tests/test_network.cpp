#include <doctest.h>

#include "bdr/error.hpp"
#include "bdr/network.hpp"
#include "support.hpp"

using namespace bdr;
using namespace bdr::testing;

TEST_SUITE("network") {

TEST_CASE("perturbed grid puts one point in every cell") {
  NetworkConfig cfg;
  cfg.area_width = cfg.area_height = 50;
  cfg.placement = PerturbedGrid{0.5};
  RandomStream rng(3);
  const auto pts = sample_positions(cfg, rng);
  REQUIRE(pts.size() == 10000);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double i = static_cast<double>(k % 100), j = static_cast<double>(k / 100);
    CHECK(pts[k].x() >= i * 0.5);
    CHECK(pts[k].x() < (i + 1) * 0.5);
    CHECK(pts[k].y() >= j * 0.5);
    CHECK(pts[k].y() < (j + 1) * 0.5);
  }
}

TEST_CASE("unit disk links") {
  CHECK(link_udg(Point(0, 0), Point(0, 1)));
  CHECK(link_udg(Point(0, 0), Point(0.3, 0.4)));
  CHECK_FALSE(link_udg(Point(0, 0), Point(0.8, 0.7)));
}

TEST_CASE("quasi unit disk links") {
  CHECK(link_qudg(Point(0, 0), Point(0.5, 0), 0.75, false));
  CHECK_FALSE(link_qudg(Point(0, 0), Point(1.2, 0), 0.75, true));
  const CommModel model = QuasiUnitDisk{0.75};
  const bool first = linked(model, 42, 3, 9, Point(0, 0), Point(0.9, 0));
  for (int i = 0; i < 10; ++i) {
    CHECK(linked(model, 42, 3, 9, Point(0, 0), Point(0.9, 0)) == first);
    CHECK(linked(model, 42, 9, 3, Point(0.9, 0), Point(0, 0)) == first);
  }
}

TEST_CASE("pair coin is roughly fair") {
  PairCoin coin{11};
  int heads = 0;
  for (NodeId a = 0; a < 100; ++a)
    for (NodeId b = a + 1; b < 100; ++b) heads += coin(a, b) ? 1 : 0;
  CHECK(heads > 2300);
  CHECK(heads < 2650);
}

TEST_CASE("collinear points at spacing 0.6 form a path") {
  NetworkConfig cfg;
  const auto g = build_graph({Point(0, 0), Point(0.6, 0), Point(1.2, 0)}, cfg);
  CHECK(g.edge_count() == 2);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 2));
  CHECK(g.signal(0, 1) == Signal::Weak);
  CHECK(g.signal(1, 2) == Signal::Weak);
}

TEST_CASE("generated graphs agree with the link model pairwise") {
  NetworkConfig cfg;
  cfg.area_width = cfg.area_height = 10;
  cfg.seed = 5;
  const auto g = generate_network(cfg);
  const auto& p = g.positions();
  for (NodeId a = 0; a < g.size(); ++a)
    for (NodeId b = a + 1; b < g.size(); ++b) {
      const double d2 = (p[a] - p[b]).squaredNorm();
      REQUIRE(g.adjacent(a, b) == (d2 <= 1.0));
      if (g.adjacent(a, b)) CHECK(g.signal(a, b) == (d2 < 0.25 ? Signal::Strong : Signal::Weak));
    }

  cfg.comm_model = QuasiUnitDisk{0.6};
  const auto q = generate_network(cfg);
  const auto& qp = q.positions();
  for (NodeId a = 0; a < q.size(); ++a)
    for (NodeId b = a + 1; b < q.size(); ++b) {
      const double d2 = (qp[a] - qp[b]).squaredNorm();
      if (q.adjacent(a, b)) CHECK(d2 <= 1.0);
      if (d2 <= 0.36) CHECK(q.adjacent(a, b));
    }
}

TEST_CASE("spacing 0.5 gives degree near 12") {
  // pi/0.25 - 1 = 11.57 before the losses along the area border
  NetworkConfig cfg;
  cfg.area_width = cfg.area_height = 50;
  cfg.placement = PerturbedGrid{0.5};
  double sum = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    cfg.seed = seed;
    sum += generate_network(cfg).average_degree();
  }
  CHECK(sum / 3 > 11.25);
  CHECK(sum / 3 < 12.75);
}

TEST_CASE("derived spacing gives about n*12/2 edges") {
  NetworkConfig cfg;
  cfg.area_width = cfg.area_height = 50;
  cfg.placement = PerturbedGrid{spacing_for_degree(12)};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    cfg.seed = seed;
    const auto g = generate_network(cfg);
    const double want = static_cast<double>(g.size()) * 12.0 / 2.0;
    CHECK(static_cast<double>(g.edge_count()) == doctest::Approx(want).epsilon(0.05));
  }
}

TEST_CASE("random placement reaches the target degree") {
  NetworkConfig cfg;
  cfg.area_width = cfg.area_height = 20;
  cfg.placement = RandomPlacement{};
  cfg.target_avg_degree = 15;
  double sum = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    cfg.seed = seed;
    const auto g = generate_network(cfg);
    CHECK(g.average_degree() >= 15.0);
    sum += g.average_degree();
  }
  const double mean = sum / 20;
  CHECK(mean >= 14.5);
  CHECK(mean <= 15.5);
}

TEST_CASE("generation is deterministic") {
  NetworkConfig cfg;
  cfg.area_width = cfg.area_height = 12;
  cfg.seed = 99;
  cfg.comm_model = QuasiUnitDisk{0.75};
  CHECK(generate_network(cfg) == generate_network(cfg));
  cfg.placement = RandomPlacement{};
  CHECK(generate_network(cfg) == generate_network(cfg));
}

TEST_CASE("no node lies inside a hole mask") {
  NetworkConfig cfg;
  cfg.hole_mask = hole_preset("cross", cfg.area_width, cfg.area_height);
  for (auto placement : {Placement{PerturbedGrid{0.5}}, Placement{RandomPlacement{}}}) {
    cfg.placement = placement;
    const auto g = generate_network(cfg);
    for (const Point& p : g.positions())
      for (const auto& poly : cfg.hole_mask) CHECK_FALSE(strictly_inside(p, poly));
  }
}

TEST_CASE("invalid configurations are rejected") {
  NetworkConfig cfg;
  cfg.area_width = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.comm_model = QuasiUnitDisk{1.5};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.placement = PerturbedGrid{-1};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.hole_mask = {{Point(1, 1), Point(5, 5), Point(5, 1), Point(1, 5)}};  // bow tie
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.hole_mask = {{Point(1, 1), Point(50, 1), Point(1, 5)}};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  CHECK_THROWS_AS(hole_preset("nonsense", 30, 30), ConfigError);
}

TEST_CASE("unreachable random degree fails") {
  // a strip thinner than the radio range caps the degree well below the
  // node-count limit
  NetworkConfig cfg;
  cfg.area_width = 0.1;
  cfg.area_height = 100;
  cfg.placement = RandomPlacement{};
  cfg.target_avg_degree = 20;
  CHECK_THROWS_AS(generate_network(cfg), GenerationError);
}

TEST_CASE("spacing formula") {
  CHECK(spacing_for_degree(12) == doctest::Approx(std::sqrt(std::numbers::pi / 13)));
  CHECK(spacing_for_degree(12, QuasiUnitDisk{0.75}) < spacing_for_degree(12));
  CHECK(spacing_for_degree(12, QuasiUnitDisk{1.0}) == doctest::Approx(spacing_for_degree(12)));
}

}
