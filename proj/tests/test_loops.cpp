#include <doctest.h>

#include <cmath>

#include "brute_force.hpp"
#include "systole/bounds.hpp"
#include "systole/error.hpp"
#include "systole/loops.hpp"

using namespace systole;

TEST_CASE("square torus counts match the lattice oracle") {
  for (int n : {3, 4, 6}) {
    const auto m = build_flat_torus({1, 0}, {0, 1}, n);
    for (double t : {0.0, 0.5, 0.99, 1.0, 1.2, 1.5, 2.0, 2.5, 3.3, 4.0, 5.7}) {
      CHECK(count_loops(m, 0, t) == oracle::square_torus_count(t));
    }
  }
  const auto m = build_flat_torus({1, 0}, {0, 1}, 4);
  CHECK(count_loops(m, 0, 0.99) == 1);
  CHECK(count_loops(m, 0, 1.0) == 5);
  CHECK(count_loops(m, 0, 2.0) == 13);
  CHECK(count_loops(m, 0, 2.5) == 17);
  CHECK(count_loops(m, 5, 2.5) == 17);
  CHECK(count_loops(m, 0, 10.0) == oracle::square_torus_count(10.0));
}

TEST_CASE("genus-2 polygon counts match the word-enumeration oracle") {
  const auto sizes = oracle::genus2_ball_sizes(6);
  const auto p = PolygonComplex::standard(2);
  for (int t = 0; t <= 6; ++t) CHECK(count_loops(p, t) == sizes[static_cast<std::size_t>(t)]);
  CHECK(count_loops(p, 3.5) == sizes[3]);
  CHECK(count_loops(p, 0.999) == 1);
}

TEST_CASE("counts are nondecreasing in T") {
  const auto m = build_torus_chain(2);
  std::int64_t prev = 0;
  for (double t = 0.0; t <= 4.0; t += 0.25) {
    const auto c = count_loops(m, 0, t);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("homology proxy never exceeds the exact count") {
  const auto p = PolygonComplex::standard(2);
  for (double t : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}) CHECK(count_loops_homology_proxy(p, t) <= count_loops(p, t));
  CHECK(count_loops_homology_proxy(p, 1.0) == count_loops(p, 1.0));
  CHECK(count_loops_homology_proxy(p, 4.0) < count_loops(p, 4.0));
}

TEST_CASE("samples") {
  const auto m = build_flat_torus({1, 0}, {0, 1}, 4);
  const auto s = sample_loop_growth(m, 0, {1.0, 2.0, 3.0});
  CHECK(s.counts == std::vector<std::int64_t>{5, 13, oracle::square_torus_count(3.0)});
  CHECK_FALSE(s.homology_proxy);
  CHECK(sample_loop_growth(build_torus_chain(2), 0, {1.0}).homology_proxy);
  CHECK_FALSE(sample_loop_growth(PolygonComplex::standard(2), {1.0}).homology_proxy);
  CHECK_THROWS_AS(sample_loop_growth(m, 0, {2.0, 1.0}), Error);
  CHECK_THROWS_AS(count_loops(m, 99, 1.0), Error);
  CHECK_THROWS_AS(count_loops(m, 0, -1.0), Error);
  LoopGrowthSample bad{{1.0, 2.0}, {3, 2}, 0, true};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("resource caps report progress") {
  LoopCountOptions tiny;
  tiny.max_classes = 100;
  try {
    count_loops(PolygonComplex::standard(2), 6.0, tiny);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.kind() == ErrorKind::Resource);
    CHECK_FALSE(e.progress().empty());
  }
  CHECK_THROWS_AS(count_loops(build_flat_torus({1, 0}, {0, 1}, 4), 0, 50.0, tiny), ResourceError);
}

TEST_CASE("entropy of the flat torus is near zero") {
  std::vector<double> ts;
  for (int k = 1; k <= 40; ++k) ts.push_back(0.5 * k);
  const auto s = sample_loop_growth(build_flat_torus({1, 0}, {0, 1}, 4), 0, ts);
  const auto e = estimate_entropy(s);
  CHECK(e.h_est <= 0.1);
  CHECK(e.h_est >= 0.0);
  CHECK(e.fit_max == 20.0);
  CHECK(e.fit_min == 10.5);
  CHECK(e.raw_slope > e.h_est);
}

TEST_CASE("entropy of the genus-2 polygon complex") {
  const auto p = PolygonComplex::standard(2);
  const auto s = sample_loop_growth(p, {1, 2, 3, 4, 5, 6});
  const auto e = estimate_entropy(s);
  CHECK(e.h_est > 0.0);
  const double katok = katok_lower_bound({2, 1.0, p.area, {}});
  const double envelope = 2.0 * e.residual / (e.fit_max - e.fit_min);
  CHECK(e.h_est >= katok - envelope);
}

TEST_CASE("entropy estimator on synthetic samples") {
  LoopGrowthSample flat{{1, 2, 3, 4, 5}, {1, 1, 1, 1, 1}, 0, false};
  const auto d = estimate_entropy(flat);
  CHECK(d.degenerate);
  CHECK(d.h_est == 0.0);

  LoopGrowthSample expo;
  for (int k = 1; k <= 12; ++k) {
    expo.thresholds.push_back(k);
    expo.counts.push_back(static_cast<std::int64_t>(std::llround(std::exp(1.5 * k))));
  }
  CHECK(estimate_entropy(expo).h_est == doctest::Approx(1.5).epsilon(1e-3));

  LoopGrowthSample few{{1, 2, 3}, {1, 2, 3}, 0, false};
  CHECK_THROWS_AS(estimate_entropy(few), Error);
  LoopGrowthSample zeros{{1, 2, 3, 4, 5}, {0, 0, 1, 2, 3}, 0, false};
  CHECK_THROWS_AS(estimate_entropy(zeros), Error);
}
