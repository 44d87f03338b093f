#include <doctest.h>

#include <cmath>

#include "elastoibvp/errors.hpp"
#include "elastoibvp/linear.hpp"
#include "support.hpp"

using namespace elastoibvp;
using namespace elastoibvp::linear;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const SolverError& e) {
    return e.code();
  }
  FAIL("expected SolverError");
  return ErrorCode::InvalidArgument;
}

const PiecewiseFn kIdentity = PiecewiseFn::affine(1.0, 0.0);

}  // namespace

TEST_CASE("advect branches") {
  CHECK(advect(kIdentity, nullptr, -1.0, 1.0, 1.0) == 2.0);
  CHECK(advect(kIdentity, &kIdentity, 2.0, 1.0, 1.0) == 0.5);
  CHECK(advect(kIdentity, &kIdentity, 2.0, 3.0, 1.0) == 1.0);
  CHECK(code_of([] { advect(kIdentity, nullptr, 2.0, 1.0, 1.0); }) == ErrorCode::MissingBoundaryData);
  // On the characteristic itself the initial-data branch applies.
  CHECK(advect(kIdentity, &kIdentity, 2.0, 2.0, 1.0) == 0.0);
}

TEST_CASE("sign cases") {
  CHECK(classify(-2.0, 1.0) == SignCase::AllOutgoing);
  CHECK(classify(0.0, 1.0) == SignCase::OneIncoming);
  CHECK(classify(3.0, 1.0) == SignCase::AllIncoming);
  CHECK(code_of([] { classify(1.0, 1.0); }) == ErrorCode::WrongCase);
  CHECK(code_of([] { classify(-1.0, 1.0); }) == ErrorCode::WrongCase);
}

TEST_CASE("boundary variant must match the sign case") {
  const PiecewiseFn z(0.0);
  CHECK(code_of([&] { LinearProblem(-2.0, 1.0, z, z, BoundaryCombo{1, 0, z}); }) == ErrorCode::WrongCase);
  CHECK(code_of([&] { LinearProblem(0.0, 1.0, z, z, NoBoundary{}); }) == ErrorCode::WrongCase);
  CHECK(code_of([&] { LinearProblem(3.0, 1.0, z, z, BoundaryCombo{1, 0, z}); }) == ErrorCode::WrongCase);
  CHECK(code_of([&] { LinearProblem(0.0, 1.0, z, z, BoundaryCombo{1, 1, z}); }) == ErrorCode::DegenerateCombo);
  CHECK(code_of([&] {
          LinearProblem(3.0, 1.0, z, z, BoundaryComboPair{{1, 1, z}, {1, 1, z}});
        }) == ErrorCode::SingularBoundaryMatrix);
}

TEST_CASE("case 1 substitution") {
  const LinearProblem p(-2.0, 1.0, kIdentity, PiecewiseFn::affine(2.0, 0.0), NoBoundary{});
  auto w = solve_case1(p, 1.0, 1.0);
  CHECK(w.w1 == 2.0);
  CHECK(w.w2 == 8.0);
  w = solve_case1(p, 0.4, 0.0);
  CHECK(w.w1 == 0.4);
  CHECK(w.w2 == 0.8);
  const LinearProblem c(-2.0, 1.0, PiecewiseFn(3.0), PiecewiseFn(-1.0), NoBoundary{});
  for (double x : {0.0, 1.0, 5.0}) {
    for (double t : {0.0, 0.5, 9.0}) {
      w = solve_case1(c, x, t);
      CHECK(w.w1 == 3.0);
      CHECK(w.w2 == -1.0);
    }
  }
  CHECK(code_of([&] { solve_case2(p, 1.0, 1.0); }) == ErrorCode::WrongCase);
  CHECK(code_of([&] { solve_case3(p, 1.0, 1.0); }) == ErrorCode::WrongCase);
}

TEST_CASE("case 2 with prescribed velocity recovers u(0,t)") {
  const LinearProblem p(0.0, 1.0, PiecewiseFn(1.0), PiecewiseFn(4.0), BoundaryCombo{1.0, 0.0, PiecewiseFn(0.0)});
  for (double t : {0.5, 1.0, 3.0}) {
    for (double x : {0.0, 0.3 * t, 0.99 * t}) {
      const auto w = solve_case2(p, x, t);
      CHECK(w.w1 == 4.0);
      CHECK(w.w2 == 4.0);
    }
    const auto w0 = solve_case2(p, 0.0, t);
    CHECK(state_from_invariants(w0.w1, w0.w2, 1.0).u == 0.0);
    CHECK(solve_case2(p, 1.5 * t, t).w1 == 1.0);
  }
  const auto init = solve_case2(p, 2.0, 0.0);
  CHECK(init.w1 == 1.0);
  CHECK(init.w2 == 4.0);
  CHECK(code_of([&] { solve_case1(p, 1.0, 1.0); }) == ErrorCode::WrongCase);
}

TEST_CASE("case 2 compatible constants stay constant") {
  const double k = 1.5, a = 0.4, b = 2.2, alpha = 0.7, beta = -0.3;
  const State s = state_from_invariants(a, b, k);
  const LinearProblem p(0.5, k, PiecewiseFn(a), PiecewiseFn(b),
                        BoundaryCombo{alpha, beta, PiecewiseFn(alpha * s.u + beta * s.sigma)});
  for (double x : {0.0, 0.2, 1.0, 4.0}) {
    for (double t : {0.1, 1.0, 2.0}) {
      const auto w = solve_case2(p, x, t);
      CHECK(w.w1 == doctest::Approx(a).epsilon(1e-14));
      CHECK(w.w2 == b);
    }
  }
}

TEST_CASE("case 3 Dirichlet traces") {
  const PiecewiseFn g1 = PiecewiseFn::affine(0.5, 1.0), g2 = PiecewiseFn::step(2.0, 1.0, -1.0);
  const LinearProblem p(3.0, 1.0, PiecewiseFn(0.0), PiecewiseFn(0.0), BoundaryComboPair::dirichlet(g1, g2));
  REQUIRE(p.w1_trace());
  REQUIRE(p.w2_trace());
  for (double t : {0.25, 0.8, 1.5, 2.75}) {
    CHECK((*p.w1_trace())(t) == doctest::Approx(g2(t) - g1(t)));
    CHECK((*p.w2_trace())(t) == doctest::Approx(g2(t) + g1(t)));
  }
  const LinearProblem c(3.0, 1.0, PiecewiseFn(1.0), PiecewiseFn(5.0),
                        BoundaryComboPair::dirichlet(PiecewiseFn(2.0), PiecewiseFn(3.0)));
  for (double x : {0.0, 1.0, 10.0}) {
    const auto w = solve_case3(c, x, 1.0);
    CHECK(w.w1 == 1.0);
    CHECK(w.w2 == 5.0);
  }
}

TEST_CASE("solve_linear labels") {
  const Grid g = Grid::uniform(4.0, 21, 2.0, 11);
  const PiecewiseFn z(0.0);
  const auto f1 = solve_linear(LinearProblem(-2.0, 1.0, z, z, NoBoundary{}), g);
  for (const auto& n : f1.nodes()) CHECK(n.label == CaseLabel::Linear1);

  const auto f2 = solve_linear(LinearProblem(0.0, 1.0, z, z, BoundaryCombo{1, 0, z}), g);
  for (const auto& n : f2.nodes()) {
    CHECK(n.label == (n.x >= n.t ? CaseLabel::Linear2Initial : CaseLabel::Linear2Boundary));
  }
  const auto f3 = solve_linear(LinearProblem(3.0, 1.0, z, z, BoundaryComboPair::dirichlet(z, z)), g);
  for (const auto& n : f3.nodes()) {
    const bool ok = n.label == CaseLabel::Linear3Initial || n.label == CaseLabel::Linear3Mixed ||
                    n.label == CaseLabel::Linear3Boundary;
    CHECK(ok);
    if (n.x >= 4.0 * n.t) CHECK(n.label == CaseLabel::Linear3Initial);
    if (n.x < 2.0 * n.t) CHECK(n.label == CaseLabel::Linear3Boundary);
  }
}

TEST_CASE("property: transport along characteristics and trace identities") {
  testing::Gen gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const double k = gen.uniform(0.2, 2.0);
    const auto w10 = gen.piecewise(4, 3.0, -2, 2), w20 = gen.piecewise(4, 3.0, -2, 2);
    const int which = gen.integer(1, 3);
    double ubar = 0.0;
    Boundary bc;
    BoundaryCombo combo{gen.uniform(-2, 2), gen.uniform(-2, 2), gen.piecewise(3, 3.0, -1, 1)};
    if (which == 1) {
      ubar = -k - gen.uniform(0.1, 2.0);
    } else if (which == 2) {
      ubar = gen.uniform(-0.9, 0.9) * k;
      if (std::abs(k * combo.beta - combo.alpha) < 0.1) combo.alpha += 0.5;
      bc = combo;
    } else {
      ubar = k + gen.uniform(0.1, 2.0);
      bc = BoundaryComboPair::dirichlet(gen.piecewise(3, 3.0, -1, 1), gen.piecewise(3, 3.0, -1, 1));
    }
    const LinearProblem p(ubar, k, w10, w20, bc);
    for (int m = 0; m < 20; ++m) {
      const double x = gen.uniform(0.0, 3.0), t = gen.uniform(0.0, 2.0), dt = gen.uniform(0.0, 1.0);
      const auto a = solve_at(p, x, t).w;
      // Move forward along each family; stay inside x >= 0.
      const double x1 = x + (ubar + k) * dt, x2 = x + (ubar - k) * dt;
      if (x1 >= 0.0) CHECK(solve_at(p, x1, t + dt).w.w1 == doctest::Approx(a.w1).epsilon(1e-12));
      if (x2 >= 0.0) CHECK(solve_at(p, x2, t + dt).w.w2 == doctest::Approx(a.w2).epsilon(1e-12));
    }
    if (which == 2) {
      for (double t : {0.3, 1.1, 1.9}) {
        const auto w = solve_at(p, 0.0, t).w;
        const State s = state_from_invariants(w.w1, w.w2, k);
        CHECK(combo.alpha * s.u + combo.beta * s.sigma == doctest::Approx(combo.gamma(t)).epsilon(1e-12));
      }
    }
  }
}
