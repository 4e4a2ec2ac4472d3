#include "hashbound/parameterization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hashbound {

namespace {

constexpr double kFeasTol = 1e-13;

}  // namespace

SideMap::SideMap(const Configuration& config, bool p_side) : config_(&config), p_side_(p_side) {
  const auto& vars = p_side ? config.p_vars : config.q_vars;
  std::vector<double> weight(vars.size(), 0.0);
  double constant = 0.0;
  for (const auto& s : config.segments) {
    const SlotValue& v = p_side ? s.p : s.q;
    if (v.is_var()) {
      weight.at(static_cast<std::size_t>(v.var)) += s.mult;
    } else {
      constant += s.mult * v.constant;
    }
  }
  target_ = 1.0 - constant;

  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (weight[i] > 0.0) active_.push_back({static_cast<int>(i), weight[i], vars[i].lo, vars[i].hi});
  }
  // Eliminate the heaviest variable; it has the best-conditioned solve.
  if (!active_.empty()) {
    auto heaviest = std::max_element(active_.begin(), active_.end(),
                                     [](const Active& a, const Active& b) { return a.weight < b.weight; });
    std::rotate(heaviest, heaviest + 1, active_.end());
  }
  var_slot_.assign(vars.size(), -1);
  for (std::size_t i = 0; i < active_.size(); ++i) var_slot_[static_cast<std::size_t>(active_[i].var)] = static_cast<int>(i);

  const std::size_t n = active_.size();
  if (n > kMaxDim + 1) throw std::invalid_argument("SideMap: more than three free variables on one side");
  dim_ = n == 0 ? 0 : static_cast<int>(n) - 1;

  const double T = target_;
  if (n == 0) {
    feasible_ = std::abs(T) <= kFeasTol;
    if (feasible_) pieces_.push_back(Piece{});
    return;
  }
  const Active& e = active_.back();
  if (n == 1) {
    const double x = T / e.weight;
    feasible_ = x >= e.lo - kFeasTol && x <= e.hi + kFeasTol;
    if (feasible_) pieces_.push_back(Piece{});
    return;
  }
  const Active& f1 = active_[0];
  if (n == 2) {
    const double lo = std::max(f1.lo, (T - e.weight * e.hi) / f1.weight);
    const double hi = std::min(f1.hi, (T - e.weight * e.lo) / f1.weight);
    feasible_ = lo <= hi + kFeasTol;
    if (feasible_) pieces_.push_back(Piece{lo, std::max(lo, hi), {}, {}});
    return;
  }

  const Active& f2 = active_[1];
  const double L = std::max(f1.lo, (T - f2.weight * f2.hi - e.weight * e.hi) / f1.weight);
  const double H = std::min(f1.hi, (T - f2.weight * f2.lo - e.weight * e.lo) / f1.weight);
  feasible_ = L <= H + kFeasTol;
  if (!feasible_) return;
  const double Hc = std::max(L, H);

  // x2 in [max(lo2, (T - we*hi_e - w1 x1)/w2), min(hi2, (T - we*lo_e - w1 x1)/w2)]
  const Line lo_lin{(T - e.weight * e.hi) / f2.weight, -f1.weight / f2.weight};
  const Line hi_lin{(T - e.weight * e.lo) / f2.weight, -f1.weight / f2.weight};
  const Line lo_const{f2.lo, 0.0};
  const Line hi_const{f2.hi, 0.0};

  std::vector<double> cuts{L, Hc};
  for (double x : {(T - e.weight * e.hi - f2.weight * f2.lo) / f1.weight,
                   (T - e.weight * e.lo - f2.weight * f2.hi) / f1.weight}) {
    if (x > L && x < Hc) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.size() == 1) cuts.push_back(cuts[0]);

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (b - a <= 0.0 && cuts.size() > 2) continue;
    const double mid = 0.5 * (a + b);
    Piece piece{a, b, lo_lin.at(mid) >= lo_const.c0 ? lo_lin : lo_const,
                hi_lin.at(mid) <= hi_const.c0 ? hi_lin : hi_const};
    pieces_.push_back(piece);
  }
}

}  // namespace hashbound
