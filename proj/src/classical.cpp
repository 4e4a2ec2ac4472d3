#include "hashbound/classical.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hashbound/psi.hpp"

namespace hashbound {

namespace {

std::string pair_text(int b, int k) { return "(b,k)=(" + std::to_string(b) + "," + std::to_string(k) + ")"; }

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

ProblemParams::ProblemParams(int b_, int k_, std::optional<int> j_) : b(b_), k(k_), j(j_) {
  require(b >= 2, "ProblemParams: b must be at least 2");
  require(k >= 3 && k <= b, "ProblemParams: need 3 <= k <= b, got " + pair_text(b, k));
  if (j) require(*j >= 2 && *j <= k - 2, "ProblemParams: need 2 <= j <= k-2, got j=" + std::to_string(*j));
}

int ProblemParams::require_j() const {
  if (!j) throw std::invalid_argument("ProblemParams: j is required here");
  return *j;
}

double fredman_komlos(const ProblemParams& params) {
  return falling_ratio(params.b, params.k - 1) * std::log2(params.b - params.k + 2.0);
}

double korner_marton_term(int b, int k, int j) {
  require(j >= 0 && j <= k - 2, "korner_marton_term: j out of range");
  return falling_ratio(b, j + 1) * std::log2(static_cast<double>(b - j) / (k - j - 1));
}

BoundWithJ korner_marton(const ProblemParams& params) {
  require(params.k >= 4, "korner_marton: needs k >= 4");
  BoundWithJ best{std::numeric_limits<double>::infinity(), 0};
  for (int j = 2; j <= params.k - 2; ++j) {
    const double v = korner_marton_term(params.b, params.k, j);
    if (v < best.value) best = {v, j};
  }
  return best;
}

double dvj_bound(const ProblemParams& params) {
  const double b = params.b;
  require(params.k >= 4, "dvj_bound: needs b >= k >= 4");
  const double lg = std::log2((b - 2.0) / (params.k - 3.0));
  require(lg > 0.0, "dvj_bound: degenerate logarithm");
  return 1.0 / (1.0 / std::log2(b) + b * b / ((b * b - 3.0 * b + 2.0) * lg));
}

double rate_from_Mj(const ProblemParams& params, double Mj) {
  const int j = params.require_j();
  require(Mj > 0.0, "rate_from_Mj: Mj must be positive");
  const double l1 = std::log2(static_cast<double>(params.b - j) / (params.k - j - 1));
  const double l2 = std::log2(static_cast<double>(params.b) / (j - 1));
  require(l1 > 0.0 && l2 > 0.0, "rate_from_Mj: degenerate logarithm");
  return 1.0 / (2.0 / (Mj * l1) + 1.0 / l2);
}

BoundWithJ conjectured_bound(const ProblemParams& params) {
  require(params.k >= 4, "conjectured_bound: needs b >= k >= 4");
  BoundWithJ best{std::numeric_limits<double>::infinity(), 0};
  for (int j = 2; j <= params.k - 2; ++j) {
    const ProblemParams pj(params.b, params.k, j);
    const double v = rate_from_Mj(pj, psi_uniform_closed_form(PsiParams(params.b, j)));
    if (v < best.value) best = {v, j};
  }
  return best;
}

double plotkin_delta(int b, double rate) { return (1.0 - rate / std::log2(b)) * (b - 1.0) / b; }

double balanced_fixed_point_constant(int b, int k) {
  require(k >= 3 && b >= k, "balanced_fixed_point: need b >= k >= 3");
  double c = 1.0;
  for (int i = 0; i < k - 3; ++i) c *= static_cast<double>(b - 2 - i) / b;
  return c;
}

double balanced_fixed_point(int b, int k, const std::function<double(double)>& F) {
  const double c = balanced_fixed_point_constant(b, k);
  require(c > 0.0, "balanced_fixed_point: constant must be positive");
  const double top = std::log2(b);

  constexpr int kProbe = 257;
  double prev = F(0.0);
  for (int i = 1; i < kProbe; ++i) {
    const double r = top * i / (kProbe - 1);
    const double cur = F(r);
    if (cur > prev + 1e-12) {
      throw std::invalid_argument("balanced_fixed_point: F increases near R=" + std::to_string(r));
    }
    prev = cur;
  }

  // g(R) = c F(R) - R is decreasing; find its last nonnegative point.
  auto g = [&](double r) { return c * F(r) - r; };
  if (g(top) >= 0.0) return top;
  if (g(0.0) < 0.0) return 0.0;
  double lo = 0.0;
  double hi = top;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) >= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

PlotkinResult plotkin_combined_k4(int b) {
  require(b >= 4, "plotkin_combined_k4: needs b >= 4");
  const double lg = std::log2(b);
  const double bb = b;
  PlotkinResult r{};
  r.intersection = balanced_fixed_point(b, 4, [b](double rate) { return plotkin_delta(b, rate); });
  r.closed_form = (bb - 1) * (bb - 2) * lg / ((bb - 1) * (bb - 2) + bb * bb * lg);
  r.printed_formula = bb * (bb - 1) * lg / ((bb - 1) * (bb - 2) + bb * bb * lg);
  return r;
}

TabulatedF::TabulatedF(std::vector<double> r, std::vector<double> delta) : r_(std::move(r)), delta_(std::move(delta)) {
  require(r_.size() == delta_.size(), "TabulatedF: column length mismatch");
  require(r_.size() >= 2, "TabulatedF: need at least two rows");
  for (std::size_t i = 1; i < r_.size(); ++i) {
    require(r_[i] > r_[i - 1], "TabulatedF: R must be strictly increasing (row " + std::to_string(i + 1) + ")");
    require(delta_[i] <= delta_[i - 1], "TabulatedF: delta must be nonincreasing (row " + std::to_string(i + 1) + ")");
  }
}

TabulatedF TabulatedF::parse(std::istream& in) {
  std::vector<double> r;
  std::vector<double> d;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double a = 0.0;
    double x = 0.0;
    if (!(ls >> a)) continue;  // blank line
    if (!(ls >> x)) throw std::invalid_argument("TabulatedF: line " + std::to_string(lineno) + " needs two columns");
    r.push_back(a);
    d.push_back(x);
  }
  return TabulatedF(std::move(r), std::move(d));
}

TabulatedF TabulatedF::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("TabulatedF: cannot open " + path);
  return parse(in);
}

double TabulatedF::operator()(double rate) const {
  if (rate <= r_.front()) return delta_.front();
  if (rate >= r_.back()) return delta_.back();
  std::size_t i = 1;
  while (r_[i] < rate) ++i;
  const double t = (rate - r_[i - 1]) / (r_[i] - r_[i - 1]);
  return delta_[i - 1] + t * (delta_[i] - delta_[i - 1]);
}

}  // namespace hashbound
