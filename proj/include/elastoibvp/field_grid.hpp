#pragma once

#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "elastoibvp/core.hpp"

namespace elastoibvp {

/// Which closed-form branch produced a node.
enum class CaseLabel {
  None,
  Linear1,
  Linear2Initial,   // x >= (ubar + k) t
  Linear2Boundary,  // x <  (ubar + k) t
  Linear3Initial,   // both invariants from initial data
  Linear3Mixed,     // w1 from boundary, w2 from initial data
  Linear3Boundary,  // both invariants from boundary data
  Riemann1,
  Riemann2,
  Riemann3,
  Riemann4,
  Riemann5,
  Riemann6,
};

/// Which path family wins the minimisation for the variational solver.
enum class Branch { None, Interior, Boundary, Tie };

std::string_view to_string(CaseLabel label) noexcept;
std::string_view to_string(Branch branch) noexcept;

/// Tensor-product sample set: ts outer, xs inner.
struct Grid {
  std::vector<double> xs;
  std::vector<double> ts;

  /// nx nodes on [0, x_max], nt nodes on (0, t_max]: t_n = t_max (n+1) / nt.
  static Grid uniform(double x_max, int nx, double t_max, int nt);

  /// Throws EmptyGrid / InvalidArgument for empty, unsorted, negative x or t <= 0.
  void validate(bool require_positive_t = true) const;
  std::size_t size() const noexcept { return xs.size() * ts.size(); }
};

struct FieldNode {
  double x = 0.0;
  double t = 0.0;
  double u = 0.0;
  double sigma = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  CaseLabel label = CaseLabel::None;
  Branch branch = Branch::None;
  /// Tie in the minimisation, or a node sitting exactly on a case threshold.
  bool flagged = false;
};

class FieldGrid {
 public:
  using NodeFn = std::function<FieldNode(double x, double t)>;

  FieldGrid(Grid grid, std::vector<FieldNode> nodes);

  /// Evaluates `fn` at every node. Rows are evaluated concurrently; the result
  /// does not depend on the thread count.
  static FieldGrid evaluate(Grid grid, const NodeFn& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t nx() const noexcept { return grid_.xs.size(); }
  std::size_t nt() const noexcept { return grid_.ts.size(); }
  const FieldNode& at(std::size_t it, std::size_t ix) const { return nodes_[it * nx() + ix]; }
  FieldNode& at(std::size_t it, std::size_t ix) { return nodes_[it * nx() + ix]; }
  const std::vector<FieldNode>& nodes() const noexcept { return nodes_; }

 private:
  Grid grid_;
  std::vector<FieldNode> nodes_;
};

/// Builds a node from a state, filling in the Riemann invariants.
FieldNode make_node(double x, double t, const State& s, double k,
                    CaseLabel label = CaseLabel::None, Branch branch = Branch::None,
                    bool flagged = false);

/// CSV with header x,t,u,sigma,w1,w2,case,branch; 17 significant digits.
void write_csv(std::ostream& os, const FieldGrid& field);

/// Runs body(i) for i in [0, n) on worker threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace elastoibvp
