#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "elastoibvp/errors.hpp"
#include "elastoibvp/riemann.hpp"
#include "elastoibvp/variational.hpp"
#include "elastoibvp/viscous.hpp"
#include "support.hpp"

using namespace elastoibvp;
using namespace elastoibvp::viscous;

namespace {

const ModelConstants kJ1(1.0, 0.0, 1);

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const SolverError& e) {
    return e.code();
  }
  FAIL("expected SolverError");
  return ErrorCode::InvalidArgument;
}

ViscousConfig mesh(double eps, double L, int nx, double t_end, Scheme scheme = Scheme::ExplicitUpwind) {
  ViscousConfig c;
  c.epsilon = eps;
  c.length = L;
  c.nx = nx;
  c.t_end = t_end;
  c.scheme = scheme;
  return c;
}

// Exact reference on the x nodes of [0, x_max] at time t.
FieldGrid riemann_reference(const riemann::RiemannData& d, double x_max, int nx, double t) {
  Grid g;
  for (int i = 0; i <= nx; ++i) g.xs.push_back(x_max * i / nx);
  g.ts = {t};
  return riemann::solve_riemann(d, g);
}

double width_10_90(const ViscousRun& run, double lo, double hi) {
  const auto& u = run.final().u;
  auto crossing = [&](double level) {
    for (std::size_t i = 1; i < u.size(); ++i) {
      if (u[i - 1] >= level && u[i] < level) {
        return run.xs[i - 1] + (u[i - 1] - level) / (u[i - 1] - u[i]) * (run.xs[i] - run.xs[i - 1]);
      }
    }
    return std::nan("");
  };
  return crossing(lo + 0.1 * (hi - lo)) - crossing(lo + 0.9 * (hi - lo));
}

}  // namespace

TEST_CASE("config validation") {
  CHECK(code_of([] { mesh(0.0, 4, 100, 1).validate(); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { mesh(0.1, -1, 100, 1).validate(); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { mesh(0.1, 4, 15, 1).validate(); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { mesh(0.1, 4, 100, 0).validate(); }) == ErrorCode::InvalidArgument);
  auto c = mesh(0.1, 4, 100, 1);
  c.cfl_safety = 0.0;
  CHECK_THROWS_AS(c.validate(), SolverError);
  c.cfl_safety = 1.5;
  CHECK_THROWS_AS(c.validate(), SolverError);
  c.cfl_safety = 1.0;
  c.snapshot_times = {0.5, 0.2};
  CHECK_THROWS_AS(c.validate(), SolverError);
  c.snapshot_times = {0.2, 0.5};
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("constant compatible data is steady") {
  for (auto scheme : {Scheme::ExplicitUpwind, Scheme::SemiImplicit}) {
    for (double u : {2.0, 0.3, -1.0}) {
      const auto spec = ProblemSpec::on_level_set(kJ1, PiecewiseFn(u), PiecewiseFn(u));
      const auto cfg = mesh(0.1, 2.0, 64, 0.5, scheme);
      for (const auto& run : {solve_scalar_viscous(spec, cfg), solve_system_viscous(spec, cfg)}) {
        for (const auto& s : run.snapshots) {
          for (double x : s.u) CHECK(x == doctest::Approx(u).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("snapshots, trace and step bound") {
  const auto d = riemann::RiemannData::from_burgers(0.5, 1.5, kJ1);
  auto cfg = mesh(0.1, 6.0, 600, 1.0);
  cfg.snapshot_times = {0.25, 0.5};
  const auto run = solve_scalar_viscous(d.to_problem(), cfg);
  REQUIRE(run.snapshots.size() == 4);
  CHECK(run.snapshots[0].t == 0.0);
  CHECK(run.snapshots[1].t == 0.25);
  CHECK(run.snapshots[3].t == 1.0);
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    CHECK(run.snapshots[i].u.size() == 601);
    if (i > 0) CHECK(run.snapshots[i].t > run.snapshots[i - 1].t);
  }
  CHECK(run.boundary_trace.size() == run.snapshots.size());
  const double dx = cfg.dx();
  CHECK(run.dt <= cfg.cfl_safety * std::min(dx / 1.5, dx * dx / (2 * cfg.epsilon)));
  CHECK(run.final().u[0] == d.ub);
  CHECK(run.final().u[600] == d.u0);
}

TEST_CASE("property: maximum principle for both schemes") {
  testing::Gen gen(31);
  for (int trial = 0; trial < 12; ++trial) {
    const ModelConstants mc(gen.uniform(0.5, 2.0), gen.uniform(-1, 1), gen.integer(1, 2));
    // Far field constant beyond x = 1 so the disturbance stays inside [0, 6].
    auto u0 = gen.piecewise(3, 1.0, -1.0, 1.0);
    std::vector<double> starts(u0.starts().begin(), u0.starts().end());
    std::vector<Piece> pieces(u0.pieces().begin(), u0.pieces().end());
    starts.push_back(1.0 + 1e-9 + starts.back());
    pieces.push_back(Piece::constant(mc.from_burgers(gen.uniform(-0.5, 0.5))));
    for (auto& p : pieces) p.intercept += mc.shift();
    const auto spec = ProblemSpec::on_level_set(mc, PiecewiseFn(starts, pieces),
                                                PiecewiseFn(mc.from_burgers(gen.uniform(-1, 1))));
    const auto scheme = trial % 2 ? Scheme::SemiImplicit : Scheme::ExplicitUpwind;
    const auto run = solve_scalar_viscous(spec, mesh(0.05, 6.0, 300, 0.5, scheme));
    const auto [i_lo, i_hi] = spec.u0.range(0.0, 6.0);
    const double lo = std::min(mc.to_burgers(i_lo), mc.to_burgers(spec.ub(0.0)));
    const double hi = std::max(mc.to_burgers(i_hi), mc.to_burgers(spec.ub(0.0)));
    REQUIRE(run.observed.size() == 1);
    CHECK(run.observed[0].lo >= lo - 1e-12);
    CHECK(run.observed[0].hi <= hi + 1e-12);
  }
}

TEST_CASE("system run preserves the level set and matches the scalar run") {
  for (int j : {1, 2}) {
    const ModelConstants mc(1.0, 0.4, j);
    const auto d = riemann::RiemannData::from_burgers(1.0, -0.5, mc);
    for (auto scheme : {Scheme::ExplicitUpwind, Scheme::SemiImplicit}) {
      const auto cfg = mesh(0.1, 6.0, 400, 1.0, scheme);
      const auto a = solve_scalar_viscous(d.to_problem(), cfg);
      const auto b = solve_system_viscous(d.to_problem(), cfg);
      double diff = 0.0, dev = 0.0;
      for (std::size_t i = 0; i < a.xs.size(); ++i) {
        diff = std::max(diff, std::abs(a.final().u[i] - b.final().u[i]));
        dev = std::max(dev, std::abs(b.final().sigma[i] - mc.shift() * b.final().u[i] - mc.c()));
      }
      CHECK(diff <= 1e-6);
      CHECK(dev <= 1e-12 + cfg.dx());
    }
  }
}

TEST_CASE("system run off the level set stays bounded by its invariants") {
  const ModelConstants mc(1.0, 0.0, 1);
  ProblemSpec spec{mc, PiecewiseFn::step(0.2, 0.5, -0.1), PiecewiseFn::step(0.5, 1.0, 0.0),
                   PiecewiseFn(0.3), PiecewiseFn(0.8)};
  const auto run = solve_system_viscous(spec, mesh(0.05, 6.0, 300, 0.5));
  REQUIRE(run.observed.size() == 2);
  // w1 = sigma - u takes the values 0.3, 0.6, 0.1 initially and 0.5 at x = 0.
  CHECK(run.observed[0].lo >= 0.1 - 1e-12);
  CHECK(run.observed[0].hi <= 0.6 + 1e-12);
  // w2 = sigma + u: 0.7, 0.4, -0.1 and 1.1.
  CHECK(run.observed[1].lo >= -0.1 - 1e-12);
  CHECK(run.observed[1].hi <= 1.1 + 1e-12);
}

TEST_CASE("domain too short and step budget") {
  const auto d = riemann::RiemannData::from_burgers(0.5, 1.5, kJ1);
  CHECK(code_of([&] { solve_scalar_viscous(d.to_problem(), mesh(0.1, 1.0, 100, 1.0)); }) ==
        ErrorCode::DomainTooShort);
  CHECK(code_of([&] { solve_scalar_viscous(d.to_problem(), mesh(1.0, 1.0, 200000, 1.0)); }) ==
        ErrorCode::CFLViolation);
  auto spec = d.to_problem();
  spec.sigma0 = PiecewiseFn(7.0);
  CHECK(code_of([&] { solve_scalar_viscous(spec, mesh(0.1, 6.0, 100, 1.0)); }) ==
        ErrorCode::LevelSetViolation);
}

TEST_CASE("shock width scales with epsilon") {
  const auto d = riemann::RiemannData::from_burgers(0.5, 1.5, kJ1);
  const auto wide = solve_scalar_viscous(d.to_problem(), mesh(0.1, 8.0, 3200, 1.0));
  const auto narrow = solve_scalar_viscous(d.to_problem(), mesh(0.05, 8.0, 3200, 1.0));
  const double ratio = width_10_90(wide, d.u0, d.ub) / width_10_90(narrow, d.u0, d.ub);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("hopf-cole initial value") {
  const auto spec = ProblemSpec::on_level_set(ModelConstants(1.0, 0.0, 2), PiecewiseFn::affine(1.0, 0.0),
                                              PiecewiseFn(0.0));
  for (double eps : {1.0, 0.1, 0.01}) {
    for (double x : {0.0, 0.5, 2.0}) {
      const auto h = hopf_cole_initial(spec, x, eps);
      const double expected = -(0.5 * x * x + 1.0 * x) / (2 * eps);
      CHECK(std::abs(h.log_value - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
      REQUIRE_FALSE(h.overflow());
      CHECK(std::log(*h.value) == doctest::Approx(h.log_value).epsilon(1e-12));
    }
  }
  const auto big = hopf_cole_initial(spec, 10.0, 0.01);
  CHECK(big.overflow());
  CHECK(big.log_value == doctest::Approx(-(50.0 + 10.0) / 0.02));
  CHECK_THROWS_AS(hopf_cole_initial(spec, -1.0, 0.1), SolverError);
  CHECK_THROWS_AS(hopf_cole_initial(spec, 1.0, 0.0), SolverError);
}

TEST_CASE("convergence reports") {
  SUBCASE("constant data is exact") {
    const auto d = riemann::RiemannData::from_burgers(1.0, 1.0, kJ1);
    const auto rep = verify_convergence(d.to_problem(), mesh(0.1, 4.0, 400, 1.0), {0.2, 0.1, 0.05},
                                        riemann_reference(d, 4.0, 400, 1.0));
    for (double e : rep.l1_errors) CHECK(e <= 1e-8);
    CHECK_FALSE(rep.monotone);
  }
  SUBCASE("rarefaction and shock decrease") {
    for (auto [v0, vb] : {std::pair{1.0, -0.5}, {0.5, 1.5}}) {
      const auto d = riemann::RiemannData::from_burgers(v0, vb, kJ1);
      const auto rep = verify_convergence(d.to_problem(), mesh(0.1, 8.0, 1600, 1.0), {0.2, 0.1, 0.05},
                                          riemann_reference(d, 4.0, 800, 1.0));
      CHECK(rep.monotone);
      CHECK(rep.l1_errors.size() == 3);
    }
  }
  SUBCASE("system model gives the same errors on level-set data") {
    const auto d = riemann::RiemannData::from_burgers(1.0, -0.5, kJ1);
    const auto ref = riemann_reference(d, 4.0, 400, 1.0);
    const auto a = verify_convergence(d.to_problem(), mesh(0.1, 8.0, 800, 1.0), {0.2, 0.1}, ref);
    const auto b = verify_convergence(d.to_problem(), mesh(0.1, 8.0, 800, 1.0), {0.2, 0.1}, ref, true);
    CHECK(a.l1_errors[1] == doctest::Approx(b.l1_errors[1]).epsilon(1e-9));
  }
  SUBCASE("bad epsilon lists") {
    const auto d = riemann::RiemannData::from_burgers(1.0, 1.0, kJ1);
    const auto ref = riemann_reference(d, 4.0, 40, 1.0);
    CHECK_THROWS_AS(verify_convergence(d.to_problem(), mesh(0.1, 4.0, 40, 1.0), {0.1, 0.2}, ref), SolverError);
    CHECK_THROWS_AS(verify_convergence(d.to_problem(), mesh(0.1, 4.0, 40, 1.0), {}, ref), SolverError);
    CHECK_THROWS_AS(verify_convergence(d.to_problem(), mesh(0.1, 2.0, 40, 1.0), {0.1}, ref), SolverError);
  }
}

TEST_CASE("field sampling") {
  const auto d = riemann::RiemannData::from_burgers(1.0, -0.5, kJ1);
  auto cfg = mesh(0.1, 6.0, 600, 1.0);
  const Grid g = Grid::uniform(4.0, 9, 1.0, 4);
  cfg.snapshot_times = g.ts;
  const auto run = solve_scalar_viscous(d.to_problem(), cfg);
  const auto f = to_field(run, g, 1.0);
  CHECK(f.nodes().size() == 36);
  CHECK(f.at(3, 4).u == doctest::Approx(run.final().u[200]));
  const Grid bad = Grid::uniform(4.0, 9, 1.0, 3);
  CHECK_THROWS_AS(to_field(run, bad, 1.0), SolverError);
}
