#include "elastoibvp/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastoibvp/errors.hpp"

namespace elastoibvp {

PiecewiseFn::PiecewiseFn(double value) : starts_{0.0}, pieces_{Piece::constant(value)} {
  if (!std::isfinite(value)) {
    throw SolverError(ErrorCode::InvalidArgument, "piecewise value must be finite");
  }
}

PiecewiseFn::PiecewiseFn(std::vector<double> starts, std::vector<Piece> pieces)
    : starts_(std::move(starts)), pieces_(std::move(pieces)) {
  if (starts_.empty() || starts_.size() != pieces_.size()) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "piecewise function needs one start per piece");
  }
  if (starts_.front() != 0.0) {
    throw SolverError(ErrorCode::InvalidArgument, "first piece must start at 0");
  }
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    if (!std::isfinite(starts_[i]) || !std::isfinite(pieces_[i].slope) ||
        !std::isfinite(pieces_[i].intercept)) {
      throw SolverError(ErrorCode::InvalidArgument, "piecewise data must be finite");
    }
    if (i > 0 && !(starts_[i] > starts_[i - 1])) {
      throw SolverError(ErrorCode::InvalidArgument,
                        "breakpoints must be strictly increasing (at index " +
                            std::to_string(i) + ")");
    }
  }
}

PiecewiseFn PiecewiseFn::step(double left, double at, double right) {
  return PiecewiseFn({0.0, at}, {Piece::constant(left), Piece::constant(right)});
}

std::size_t PiecewiseFn::index_of(double x) const noexcept {
  // Last start <= x; x below 0 maps to the first piece.
  auto it = std::upper_bound(starts_.begin(), starts_.end(), x);
  if (it == starts_.begin()) return 0;
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

double PiecewiseFn::left_limit(double x) const noexcept {
  if (x <= 0.0) return (*this)(0.0);
  auto it = std::lower_bound(starts_.begin(), starts_.end(), x);
  const auto i = static_cast<std::size_t>(it - starts_.begin()) - 1;
  return pieces_[i](x);
}

double PiecewiseFn::integral(double a, double b) const {
  if (a > b) return -integral(b, a);
  double total = 0.0;
  for (std::size_t i = index_of(a); i < pieces_.size() && starts_[i] < b; ++i) {
    const double lo = std::max(a, starts_[i]);
    const double hi = (i + 1 < starts_.size()) ? std::min(b, starts_[i + 1]) : b;
    if (hi > lo) {
      const Piece& p = pieces_[i];
      total += 0.5 * p.slope * (hi - lo) * (hi + lo) + p.intercept * (hi - lo);
    }
  }
  return total;
}

double PiecewiseFn::max_abs(double a, double b) const {
  double m = std::max(std::abs((*this)(a)), std::abs(left_limit(b)));
  m = std::max(m, std::abs((*this)(b)));
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    const double s = starts_[i];
    if (s > a && s <= b) {
      m = std::max({m, std::abs((*this)(s)), std::abs(left_limit(s))});
    }
  }
  return m;
}

std::pair<double, double> PiecewiseFn::range(double a, double b) const {
  double lo = std::min((*this)(a), left_limit(b));
  double hi = std::max((*this)(a), left_limit(b));
  auto take = [&](double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  take((*this)(b));
  for (double s : starts_) {
    if (s > a && s <= b) {
      take((*this)(s));
      take(left_limit(s));
    }
  }
  return {lo, hi};
}

bool PiecewiseFn::all_constant() const noexcept {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const Piece& p) { return p.is_constant(); });
}

PiecewiseFn PiecewiseFn::combine(double a, const PiecewiseFn& f, double b,
                                 const PiecewiseFn& g) {
  std::vector<double> starts;
  std::merge(f.starts_.begin(), f.starts_.end(), g.starts_.begin(), g.starts_.end(),
             std::back_inserter(starts));
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  std::vector<Piece> pieces;
  pieces.reserve(starts.size());
  for (double s : starts) {
    const Piece& pf = f.pieces_[f.index_of(s)];
    const Piece& pg = g.pieces_[g.index_of(s)];
    pieces.push_back({a * pf.slope + b * pg.slope, a * pf.intercept + b * pg.intercept});
  }
  return PiecewiseFn(std::move(starts), std::move(pieces));
}

PiecewiseFn PiecewiseFn::rescaled(double scale) const {
  if (!(scale > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "rescale factor must be positive");
  }
  std::vector<double> starts(starts_.size());
  std::vector<Piece> pieces(pieces_.size());
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    starts[i] = starts_[i] / scale;
    pieces[i] = {pieces_[i].slope * scale, pieces_[i].intercept};
  }
  return PiecewiseFn(std::move(starts), std::move(pieces));
}

PiecewiseFn PiecewiseFn::shifted(double c) const {
  PiecewiseFn out = *this;
  for (Piece& p : out.pieces_) p.intercept += c;
  return out;
}

std::vector<double> sample_points(const PiecewiseFn& f, const PiecewiseFn& g) {
  std::vector<double> br;
  std::merge(f.starts().begin(), f.starts().end(), g.starts().begin(), g.starts().end(),
             std::back_inserter(br));
  br.erase(std::unique(br.begin(), br.end()), br.end());
  std::vector<double> pts;
  for (std::size_t i = 0; i < br.size(); ++i) {
    pts.push_back(br[i]);
    if (i + 1 < br.size()) pts.push_back(0.5 * (br[i] + br[i + 1]));
  }
  pts.push_back(br.back() + 1.0);
  return pts;
}

}  // namespace elastoibvp
