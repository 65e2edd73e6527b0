#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hkbound/path_forest.hpp"
#include "oracles.hpp"

using hk::LcaIndex;
using hk::PathForest;

TEST_CASE("single node forest") {
  PathForest f({-1}, {7.0});
  REQUIRE(f.point_value(0) == 7.0);
  auto [mv, arg] = f.path_min(0);
  REQUIRE(mv == 7.0);
  REQUIRE(arg == 0);
}

TEST_CASE("path of three nodes") {
  // r(0) - a(1) - b(2)
  PathForest f({-1, 0, 1}, {0.0, 0.0, 0.0});
  f.path_add(2, 1.0);
  for (int v = 0; v < 3; ++v) REQUIRE(f.point_value(v) == 1.0);
  f.path_add(2, 1.0);
  for (int v = 0; v < 3; ++v) REQUIRE(f.point_value(v) == 2.0);
}

TEST_CASE("path_min picks the witness") {
  PathForest f({-1, 0, 1}, {5.0, 2.0, 9.0});
  auto [mv, arg] = f.path_min(2);
  REQUIRE(mv == 2.0);
  REQUIRE(arg == 1);
}

TEST_CASE("path_min ties break toward the deepest node") {
  // Chain 0-1-2 with equal values.
  PathForest f({-1, 0, 1}, {3.0, 3.0, 3.0});
  auto [mv, arg] = f.path_min(2);
  REQUIRE(mv == 3.0);
  REQUIRE(arg == 2);
  auto [mv1, arg1] = f.path_min(1);
  REQUIRE(arg1 == 1);
}

TEST_CASE("cyclic parent array is rejected") {
  REQUIRE_THROWS_AS(PathForest({1, 0, -1}, {0, 0, 0}), std::invalid_argument);
  REQUIRE_THROWS_AS(PathForest({-1, 2, 1}, {0, 0, 0}), std::invalid_argument);
  REQUIRE_THROWS_AS(PathForest({0}, {0}), std::invalid_argument);
}

TEST_CASE("build initializes values") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 10; ++iter) {
    int n = 64;
    auto parent = hkt::random_parent_array(rng, n);
    std::vector<double> init(n);
    for (double& x : init) x = hkt::uniform01(rng) * 10 - 5;
    PathForest f(parent, init);
    for (int v = 0; v < n; ++v) REQUIRE(f.point_value(v) == init[v]);
  }
}

TEST_CASE("random ops match naive replay") {
  std::mt19937_64 rng(43);
  std::uint64_t total_ops = 0;
  for (int iter = 0; iter < 12; ++iter) {
    int n = hkt::uniform_int(rng, 2, 64);
    auto parent = hkt::random_parent_array(rng, n);
    std::vector<double> init(n);
    for (double& x : init) x = hkt::uniform01(rng) * 4;
    PathForest f(parent, init);
    hkt::NaiveForest naive(parent, init);

    for (int op = 0; op < 1000; ++op, ++total_ops) {
      int v = hkt::uniform_int(rng, 0, n - 1);
      switch (hkt::uniform_int(rng, 0, 2)) {
        case 0: {
          double alpha = hkt::uniform01(rng) * 3;
          f.path_add(v, alpha);
          naive.path_add(v, alpha);
          break;
        }
        case 1: {
          auto [mv, arg] = f.path_min(v);
          auto [nmv, narg] = naive.path_min(v);
          REQUIRE_THAT(mv, Catch::Matchers::WithinRel(nmv, 1e-12) ||
                               Catch::Matchers::WithinAbs(nmv, 1e-12));
          REQUIRE(arg == narg);
          break;
        }
        default: {
          REQUIRE_THAT(f.point_value(v), Catch::Matchers::WithinRel(naive.value[v], 1e-12) ||
                                             Catch::Matchers::WithinAbs(naive.value[v], 1e-12));
          break;
        }
      }
    }
  }
  REQUIRE(total_ops >= 10000);
}

TEST_CASE("path_min_below matches a bounded parent walk") {
  std::mt19937_64 rng(47);
  for (int iter = 0; iter < 10; ++iter) {
    int n = hkt::uniform_int(rng, 3, 48);
    auto parent = hkt::random_parent_array(rng, n);
    std::vector<double> init(n);
    for (double& x : init) x = hkt::uniform01(rng) * 10;
    PathForest f(parent, init);
    hkt::NaiveForest naive(parent, init);

    for (int op = 0; op < 500; ++op) {
      if (hkt::uniform_int(rng, 0, 1) == 0) {
        int v = hkt::uniform_int(rng, 0, n - 1);
        double alpha = hkt::uniform01(rng);
        f.path_add(v, alpha);
        naive.path_add(v, alpha);
      }
      // Pick v and a proper ancestor.
      int v = hkt::uniform_int(rng, 0, n - 1);
      if (parent[v] == -1) continue;
      std::vector<int> ancestors;
      for (int x = parent[v]; x != -1; x = parent[x]) ancestors.push_back(x);
      int stop = ancestors[hkt::uniform_int(rng, 0, static_cast<int>(ancestors.size()) - 1)];

      auto [mv, arg] = f.path_min_below(v, stop);
      // Naive: min over ancestors of v strictly below stop, inclusive of v.
      double best = std::numeric_limits<double>::infinity();
      int barg = -1, bdepth = -1;
      for (int x = v; x != stop; x = parent[x]) {
        if (naive.value[x] < best ||
            (naive.value[x] == best &&
             (naive.depth[x] > bdepth || (naive.depth[x] == bdepth && x < barg)))) {
          best = naive.value[x];
          barg = x;
          bdepth = naive.depth[x];
        }
      }
      if (barg == -1) {
        REQUIRE(arg == -1);
      } else {
        REQUIRE_THAT(mv, Catch::Matchers::WithinRel(best, 1e-12) ||
                             Catch::Matchers::WithinAbs(best, 1e-12));
        REQUIRE(arg == barg);
      }
    }
  }
}

TEST_CASE("lca basics") {
  // r(0) with children 1, 2; 2 with children 3, 4.
  LcaIndex ix({-1, 0, 0, 2, 2});
  REQUIRE(ix.query(3, 3) == 3);
  REQUIRE(ix.query(1, 2) == 0);
  REQUIRE(ix.query(3, 4) == 2);
  REQUIRE(ix.query(1, 4) == 0);
  REQUIRE(ix.query(2, 4) == 2);
}

TEST_CASE("lca matches parent walk on random trees") {
  std::mt19937_64 rng(53);
  int checks = 0;
  for (int iter = 0; iter < 6; ++iter) {
    int n = 64;
    auto parent = hkt::random_parent_array(rng, n);
    LcaIndex ix(parent);
    hkt::NaiveForest naive(parent, std::vector<double>(n, 0.0));
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        REQUIRE(ix.query(u, v) == naive.lca(u, v));
        ++checks;
      }
  }
  REQUIRE(checks >= 10000);
}

TEST_CASE("measured path-op cost stays near N log n") {
  std::mt19937_64 rng(59);
  int n = 64;
  auto parent = hkt::random_parent_array(rng, n);
  PathForest f(parent, std::vector<double>(n, 0.0));
  int N = 5000;
  for (int op = 0; op < N; ++op) {
    int v = hkt::uniform_int(rng, 0, n - 1);
    if (op % 2 == 0)
      f.path_add(v, 1.0);
    else
      f.path_min(v);
  }
  double c = static_cast<double>(f.op_cost()) / (N * std::log2(n));
  WARN("measured path-op cost constant C = " << c << " (visits per op per log2 n)");
  REQUIRE(c > 0.0);
}
