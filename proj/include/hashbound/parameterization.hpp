#pragma once

#include <array>
#include <vector>

#include "hashbound/configuration.hpp"

namespace hashbound {

/// Maps a point of the unit cube onto the feasible set of one side of a
/// configuration (variables in their boxes, weighted sum fixed at 1).
///
/// One variable is eliminated by the sum constraint. With one remaining
/// free variable the feasible interval is exact; with two, the second
/// variable's range is a piecewise-linear function of the first, and each
/// linear piece becomes its own unit square.
class SideMap {
 public:
  static constexpr int kMaxDim = 2;

  struct Line {
    double c0 = 0.0;
    double c1 = 0.0;
    double at(double x) const { return c0 + c1 * x; }
  };

  struct Piece {
    double a = 0.0;  // range of the first free variable
    double b = 0.0;
    Line lo;  // range of the second free variable as a function of the first
    Line hi;
  };

  SideMap(const Configuration& config, bool p_side);

  bool feasible() const { return feasible_; }
  int dim() const { return dim_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Segment values at unit-cube point u (dim() entries) of the given piece.
  template <class T>
  void segment_values(const Piece& piece, const T* u, T* out) const;

 private:
  struct Active {
    int var;
    double weight;
    double lo;
    double hi;
  };

  const Configuration* config_;
  bool p_side_;
  bool feasible_ = false;
  int dim_ = 0;
  double target_ = 1.0;
  std::vector<Active> active_;  // free variables first, eliminated last
  std::vector<Piece> pieces_;
  std::vector<int> var_slot_;  // config var index -> position in active_, or -1
};

template <class T>
void SideMap::segment_values(const Piece& piece, const T* u, T* out) const {
  std::array<T, kMaxDim + 1> x{};
  const std::size_t n = active_.size();
  if (n > 0) {
    T rest = T(target_);
    if (dim_ >= 1) {
      x[0] = T(piece.a) + u[0] * (piece.b - piece.a);
      rest = rest - x[0] * active_[0].weight;
    }
    if (dim_ >= 2) {
      const T lo = T(piece.lo.c0) + x[0] * piece.lo.c1;
      const T hi = T(piece.hi.c0) + x[0] * piece.hi.c1;
      x[1] = lo + u[1] * (hi - lo);
      rest = rest - x[1] * active_[1].weight;
    }
    x[n - 1] = rest * (1.0 / active_[n - 1].weight);
  }
  const auto& segs = config_->segments;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const SlotValue& v = p_side_ ? segs[s].p : segs[s].q;
    if (!v.is_var()) {
      out[s] = T(v.constant);
    } else {
      const int slot = var_slot_[static_cast<std::size_t>(v.var)];
      out[s] = slot >= 0 ? x[static_cast<std::size_t>(slot)] : T(0.0);
    }
  }
}

}  // namespace hashbound
