#include <doctest.h>

#include <cmath>

#include "elastoibvp/errors.hpp"
#include "elastoibvp/riemann.hpp"
#include "elastoibvp/variational.hpp"

using namespace elastoibvp;
using namespace elastoibvp::riemann;

namespace {

const ModelConstants kJ1(1.0, 0.0, 1);

bool unclassified(const RiemannData& d) {
  try {
    classify(d);
  } catch (const SolverError& e) {
    return e.code() == ErrorCode::UnclassifiedBoundaryCase;
  }
  return false;
}

}  // namespace

TEST_CASE("classification") {
  CHECK(classify({2.0, 2.0, kJ1}) == RiemannCase::C1_PositiveEqual);
  CHECK(classify({0.5, 0.5, kJ1}) == RiemannCase::C2_NegativeEqual);
  CHECK(classify({2.0, 0.0, kJ1}) == RiemannCase::C4_RarefactionFromBoundary);
  CHECK(classify({1.2, 3.0, kJ1}) == RiemannCase::C6_Shock);
  CHECK(classify({3.0, 1.5, kJ1}) == RiemannCase::C3_Rarefaction2State);
  CHECK(classify({0.5, 0.0, kJ1}) == RiemannCase::C5_NonpositiveOutflow);
  CHECK(classify({1.0, 0.0, kJ1}) == RiemannCase::C5_NonpositiveOutflow);  // v0 = 0
  CHECK(unclassified({1.0, 1.0, kJ1}));  // v0 = vb = 0
  CHECK(unclassified({2.0, 1.0, kJ1}));  // vb = 0
  CHECK(unclassified({0.5, 1.5, kJ1}));  // v0 + vb = 0
  CHECK(unclassified({0.0, 1.5, kJ1}));  // shock moving into the boundary
}

TEST_CASE("shifted states") {
  const RiemannData d(1.2, 3.0, ModelConstants(2.0, 0.0, 2));
  CHECK(d.v0() == 1.2 + 2.0);
  CHECK(d.vb() == 3.0 + 2.0);
  const auto e = RiemannData::from_burgers(0.4, -0.3, kJ1);
  CHECK(e.v0() == doctest::Approx(0.4));
  CHECK(e.vb() == doctest::Approx(-0.3));
  CHECK(check_level_set(e.to_problem()).ok);
}

TEST_CASE("shock speed") {
  CHECK(shock_speed({1.2, 3.0, kJ1}) == doctest::Approx(1.1));
  CHECK(shock_speed({0.0, 1.0, ModelConstants(1.0, 0.0, 2)}) == doctest::Approx(1.5));
  const RiemannData d(1.7, 2.9, ModelConstants(0.5, 0.0, 1));
  CHECK(shock_speed(d) == doctest::Approx(0.5 * (d.v0() + d.vb())));
  try {
    shock_speed({2.0, 2.0, kJ1});
    FAIL("expected WrongCase");
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::WrongCase);
  }
}

TEST_CASE("point solutions") {
  auto p = riemann_solution({2.0, 0.0, kJ1}, 0.5, 1.0);
  CHECK(p.rcase == RiemannCase::C4_RarefactionFromBoundary);
  CHECK(p.v == doctest::Approx(0.5));
  CHECK(p.state.u == doctest::Approx(1.5));
  CHECK(p.state.sigma == doctest::Approx(1.5));
  p = riemann_solution({1.2, 3.0, kJ1}, 1.0, 1.0);
  CHECK(p.v == 2.0);
  CHECK(p.state.u == 3.0);
  CHECK(p.state.sigma == 3.0);
  CHECK(riemann_solution({1.2, 3.0, kJ1}, 1.2, 1.0).state.u == doctest::Approx(1.2));
  for (double x : {0.0, 0.7, 3.0}) {
    p = riemann_solution({2.0, 2.0, kJ1}, x, 0.6);
    CHECK(p.state.u == 2.0);
    CHECK(p.state.sigma == 2.0);
  }
  CHECK(riemann_solution({1.2, 3.0, kJ1}, 1.1, 1.0).on_discontinuity);
  CHECK_THROWS_AS(riemann_solution({2.0, 2.0, kJ1}, 1.0, 0.0), SolverError);
  CHECK_THROWS_AS(riemann_solution({2.0, 2.0, kJ1}, -1.0, 1.0), SolverError);
}

TEST_CASE("point solutions agree with the variational oracle") {
  const std::pair<RiemannData, std::pair<double, double>> pts[] = {
      {{2.0, 0.0, kJ1}, {0.5, 1.0}},
      {{1.2, 3.0, kJ1}, {1.0, 1.0}},
      {{1.2, 3.0, kJ1}, {1.3, 1.0}},
      {{2.0, 2.0, kJ1}, {0.4, 0.8}},
      {{3.0, 1.5, kJ1}, {1.2, 1.0}},
  };
  for (const auto& [d, xt] : pts) {
    const variational::PathCostParams p(d.to_problem());
    const auto e = variational::exact_solution(p, xt.first, xt.second);
    CHECK(riemann_solution(d, xt.first, xt.second).state.u == doctest::Approx(e.state.u).epsilon(1e-7));
  }
}

TEST_CASE("field level set, fan continuity and shock placement") {
  const Grid g = Grid::uniform(4.0, 201, 2.0, 21);
  const double dx = g.xs[1] - g.xs[0];
  for (int j : {1, 2}) {
    const ModelConstants mc(0.5, 0.25, j);
    for (auto [v0, vb] : {std::pair{1.5, 0.5}, {1.0, -0.5}, {0.5, 1.5}, {-0.5, -1.0}}) {
      const auto d = RiemannData::from_burgers(v0, vb, mc);
      const auto f = solve_riemann(d, g);
      const auto rc = classify(d);
      for (const auto& n : f.nodes()) CHECK(std::abs(n.sigma - mc.shift() * n.u - mc.c()) <= 1e-12);
      for (std::size_t it = 0; it < g.ts.size(); ++it) {
        const double t = g.ts[it];
        for (std::size_t ix = 0; ix + 1 < g.xs.size(); ++ix) {
          const double du = f.at(it, ix + 1).u - f.at(it, ix).u;
          if (rc == RiemannCase::C6_Shock) {
            // One downward jump, inside the cell holding x = s t.
            if (du != 0.0) {
              CHECK(du == doctest::Approx(v0 - vb));
              CHECK(std::abs(g.xs[ix] + 0.5 * dx - shock_speed(d) * t) <= dx);
            }
          } else {
            // Continuous across fan edges: no jump larger than the fan slope allows.
            CHECK(std::abs(du) <= dx / t + 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("shock in the variational field obeys Rankine-Hugoniot") {
  const auto d = RiemannData::from_burgers(0.3, 1.9, ModelConstants(1.0, 0.0, 2));
  const Grid g = Grid::uniform(3.0, 301, 1.0, 4);
  const auto f = variational::solve_variational(variational::PathCostParams(d.to_problem()), g);
  const double dx = g.xs[1] - g.xs[0];
  const double mid = d.constants.from_burgers(0.5 * (d.v0() + d.vb()));
  std::vector<double> pos;
  for (std::size_t it = 0; it < g.ts.size(); ++it) {
    for (std::size_t ix = 0; ix + 1 < g.xs.size(); ++ix) {
      if (f.at(it, ix).u > mid && f.at(it, ix + 1).u <= mid) pos.push_back(g.xs[ix] + 0.5 * dx);
    }
  }
  REQUIRE(pos.size() == g.ts.size());
  const double speed = (pos.back() - pos.front()) / (g.ts.back() - g.ts.front());
  CHECK(std::abs(speed - 0.5 * (d.v0() + d.vb())) <= 2 * dx / (g.ts.back() - g.ts.front()));
  CHECK(d.vb() > d.v0());  // entropy: u(x-) > u(x+)
}
