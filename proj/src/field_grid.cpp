#include "elastoibvp/field_grid.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "elastoibvp/errors.hpp"

namespace elastoibvp {

std::string_view to_string(CaseLabel label) noexcept {
  switch (label) {
    case CaseLabel::None: return "-";
    case CaseLabel::Linear1: return "linear-1";
    case CaseLabel::Linear2Initial: return "linear-2-initial";
    case CaseLabel::Linear2Boundary: return "linear-2-boundary";
    case CaseLabel::Linear3Initial: return "linear-3-initial";
    case CaseLabel::Linear3Mixed: return "linear-3-mixed";
    case CaseLabel::Linear3Boundary: return "linear-3-boundary";
    case CaseLabel::Riemann1: return "riemann-1";
    case CaseLabel::Riemann2: return "riemann-2";
    case CaseLabel::Riemann3: return "riemann-3";
    case CaseLabel::Riemann4: return "riemann-4";
    case CaseLabel::Riemann5: return "riemann-5";
    case CaseLabel::Riemann6: return "riemann-6";
  }
  return "?";
}

std::string_view to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::None: return "-";
    case Branch::Interior: return "interior";
    case Branch::Boundary: return "boundary";
    case Branch::Tie: return "tie";
  }
  return "?";
}

Grid Grid::uniform(double x_max, int nx, double t_max, int nt) {
  if (nx < 2 || nt < 2) {
    throw SolverError(ErrorCode::InvalidArgument, "grid needs nx, nt >= 2");
  }
  if (!(x_max > 0.0) || !(t_max > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "grid needs x_max, t_max > 0");
  }
  Grid g;
  g.xs.resize(static_cast<std::size_t>(nx));
  g.ts.resize(static_cast<std::size_t>(nt));
  for (int i = 0; i < nx; ++i) g.xs[i] = x_max * i / (nx - 1);
  for (int n = 0; n < nt; ++n) g.ts[n] = t_max * (n + 1) / nt;
  return g;
}

void Grid::validate(bool require_positive_t) const {
  if (xs.empty() || ts.empty()) throw SolverError(ErrorCode::EmptyGrid, "grid has no nodes");
  if (!std::is_sorted(xs.begin(), xs.end()) || !std::is_sorted(ts.begin(), ts.end())) {
    throw SolverError(ErrorCode::InvalidArgument, "grid nodes must be sorted");
  }
  if (xs.front() < 0.0) throw SolverError(ErrorCode::InvalidArgument, "grid needs x >= 0");
  if (require_positive_t ? !(ts.front() > 0.0) : ts.front() < 0.0) {
    throw SolverError(ErrorCode::DegenerateTime,
                      require_positive_t ? "grid needs t > 0" : "grid needs t >= 0");
  }
}

FieldGrid::FieldGrid(Grid grid, std::vector<FieldNode> nodes)
    : grid_(std::move(grid)), nodes_(std::move(nodes)) {
  if (nodes_.size() != grid_.size()) {
    throw SolverError(ErrorCode::InvalidArgument, "node count does not match grid");
  }
}

FieldGrid FieldGrid::evaluate(Grid grid, const NodeFn& fn) {
  const std::size_t nx = grid.xs.size();
  std::vector<FieldNode> nodes(grid.size());
  parallel_for(grid.ts.size(), [&](std::size_t it) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      nodes[it * nx + ix] = fn(grid.xs[ix], grid.ts[it]);
    }
  });
  return FieldGrid(std::move(grid), std::move(nodes));
}

FieldNode make_node(double x, double t, const State& s, double k, CaseLabel label,
                    Branch branch, bool flagged) {
  const auto w = riemann_invariants(s, k);
  return {x, t, s.u, s.sigma, w.w1, w.w2, label, branch, flagged};
}

void write_csv(std::ostream& os, const FieldGrid& field) {
  os << "x,t,u,sigma,w1,w2,case,branch\n";
  fmt::memory_buffer buf;
  for (const auto& n : field.nodes()) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{}\n",
                   n.x, n.t, n.u, n.sigma, n.w1, n.w2, to_string(n.label),
                   to_string(n.branch));
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace elastoibvp
