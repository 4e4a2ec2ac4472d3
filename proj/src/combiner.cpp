#include "hashbound/combiner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hashbound/classical.hpp"
#include "hashbound/psi.hpp"

namespace hashbound {

void MiTuple::validate() const {
  if (b < 2) throw std::invalid_argument("MiTuple: b must be at least 2");
  for (double m : {m1, m2, m3, m4}) {
    if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("MiTuple: entries must be positive and finite");
  }
}

double f_eta(const MiTuple& mi, const std::vector<double>& eta) {
  if (eta.size() != static_cast<std::size_t>(mi.b) + 1) {
    throw std::invalid_argument("f_eta: eta must have b+1 entries");
  }
  const double e0 = eta[0];
  double sum = 0.0;
  double sq = 0.0;
  for (std::size_t i = 1; i < eta.size(); ++i) {
    sum += eta[i];
    sq += eta[i] * eta[i];
  }
  // 2 sum_{i<h} eta_i eta_h = sum^2 - sum of squares
  return e0 * e0 * mi.m1 + 2.0 * e0 * sum * mi.m2 + sq * mi.m3 + (sum * sum - sq) * mi.m4;
}

namespace {

// Best eta0 in [0,1] for e0^2 M1 + 2 e0 (1-e0) M2 + (1-e0)^2 A.
std::pair<double, double> best_eta0(double m1, double m2, double a) {
  auto g = [&](double e) { return e * e * m1 + 2.0 * e * (1.0 - e) * m2 + (1.0 - e) * (1.0 - e) * a; };
  std::vector<double> cands{0.0, 1.0};
  const double den = 2.0 * m2 - m1 - a;
  if (den != 0.0) cands.push_back(std::clamp((m2 - a) / den, 0.0, 1.0));
  double best_e = 0.0;
  double best_v = g(0.0);
  for (double e : cands) {
    const double v = g(e);
    if (v > best_v) {
      best_v = v;
      best_e = e;
    }
  }
  return {best_e, best_v};
}

}  // namespace

CombineResult combine(const MiTuple& mi) {
  mi.validate();
  const double b = mi.b;
  if (mi.closed_form_applies()) {
    const double a = mi.m3 / b + (b - 1.0) * mi.m4 / b;
    const auto [e0, v] = best_eta0(mi.m1, mi.m2, a);
    return {v, {e0, (1.0 - e0) / b}, false};
  }
  // With m3 >= m4 the sum over the b cells is largest when all of their
  // mass sits on one cell, leaving a one-variable quadratic.
  const auto [e0, v] = best_eta0(mi.m1, mi.m2, mi.m3);
  return {v, {e0, 1.0 - e0}, true};
}

ClassicalColumns classical_columns(int b, int k) {
  const ProblemParams pp(b, k);
  ClassicalColumns c{};
  c.fredman_komlos = fredman_komlos(pp);
  const auto km = korner_marton(pp);
  c.korner_marton = km.value;
  c.korner_marton_j = km.j;
  c.dvj = dvj_bound(pp);
  const auto cj = conjectured_bound(pp);
  c.conjectured = cj.value;
  c.conjectured_j = cj.j;
  return c;
}

BoundReport full_bound(int b, int k, int j, const std::optional<PartitionSpec>& spec, const FullBoundOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemParams pp(b, k, j);
  const PsiParams psi(b, j);
  if (spec) spec->validate(b, j);

  BoundReport r;
  r.b = b;
  r.k = k;
  r.j = j;
  r.classical = classical_columns(b, k);
  r.certified = options.maximize.certify;
  r.uniform_value = psi_uniform_closed_form(psi);

  std::optional<SubdomainMax> global;
  if (options.global) {
    global = options.global;
  } else if (options.run_global) {
    global = global_max(b, j, options.maximize);
  }

  std::optional<CombineResult> combined;
  if (spec && options.run_partition) {
    r.partition = spec;
    std::array<double, 4> values{};
    double excess = 0.0;
    for (std::size_t i = 0; i < kAllSelectors.size(); ++i) {
      const MSelector which = kAllSelectors[i];
      const bool is_global = (spec->kind == PartitionKind::MaxValue && which == MSelector::M2) ||
                             (spec->kind == PartitionKind::MinValue && which == MSelector::M4);
      SubdomainMax m = (is_global && global) ? *global : compute_Mi(*spec, which, b, j, options.maximize);
      m.which = which;
      // This selector ranges over all pairs, so it doubles as the global maximum.
      if (is_global && !global) global = m;
      values[i] = m.value + m.certified_excess;
      excess = std::max(excess, m.certified_excess);
      r.mi_configs.push_back(m.argmax_config.describe());
      r.mi_upper_bound.push_back(selector_is_relaxed(spec->kind, which));
    }
    r.mi = MiTuple{values[0], values[1], values[2], values[3], b};
    r.mi_certified_excess = excess;
    combined = combine(*r.mi);
    r.partition_M = combined->M;
    r.eta0 = combined->eta.eta0;
    r.combiner_fallback = combined->fallback;
    r.partition_rate = rate_from_Mj(pp, combined->M);
  }

  if (global) {
    r.global_checked = true;
    r.global_max = global->value + global->certified_excess;
    r.uniform_is_global = std::abs(global->value - r.uniform_value) <= 1e-9 * r.uniform_value;
  } else {
    r.global_max = r.uniform_value;
    r.uniform_is_global = true;
  }
  const double shortcut_M = r.uniform_is_global ? r.uniform_value : r.global_max;
  r.shortcut_rate = rate_from_Mj(pp, shortcut_M);
  r.M = shortcut_M;
  r.rate = r.shortcut_rate;
  r.path = r.uniform_is_global ? "uniform-shortcut" : "global-max";

  // Near-ties go to the partition path; both are valid bounds.
  if (combined && *r.partition_rate <= r.rate * (1.0 + 1e-12)) {
    r.rate = *r.partition_rate;
    r.M = combined->M;
    r.path = "partition";
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace hashbound
