#include "hashbound/partition.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "hashbound/dual.hpp"
#include "hashbound/parallel.hpp"
#include "hashbound/parameterization.hpp"

namespace hashbound {

namespace {

constexpr int kMaxJointDim = 2 * SideMap::kMaxDim;
constexpr std::size_t kTopKeep = 64;
constexpr std::size_t kMaxStarts = 6;
constexpr double kFinestStep = 1e-12;
using Grad = Dual<kMaxJointDim>;

struct Candidate {
  double value;
  std::size_t p_piece;
  std::size_t q_piece;
  std::array<double, kMaxJointDim> u;
};

struct Point {
  double value = -1.0;
  std::size_t p_piece = 0;
  std::size_t q_piece = 0;
  std::array<double, kMaxJointDim> u{};
};

// Everything needed to evaluate Psi_j on one configuration.
class ConfigSearch {
 public:
  ConfigSearch(const Configuration& config, const PsiParams& params)
      : config_(config), j_(params.j), pmap_(config, true), qmap_(config, false) {
    if (config.b() != params.b) throw std::invalid_argument("configuration size does not match b");
    for (const auto& s : config.segments) mult_.push_back(s.mult);
    if (mult_.size() > static_cast<std::size_t>(kMaxSegments)) throw std::invalid_argument("too many segments");
  }

  bool feasible() const { return pmap_.feasible() && qmap_.feasible(); }
  int dp() const { return pmap_.dim(); }
  int dq() const { return qmap_.dim(); }
  int dim() const { return dp() + dq(); }
  const SideMap& pmap() const { return pmap_; }
  const SideMap& qmap() const { return qmap_; }
  std::size_t segments() const { return mult_.size(); }

  double eval(std::size_t pp, std::size_t qp, const double* u) const {
    std::array<double, kMaxSegments> p{};
    std::array<double, kMaxSegments> q{};
    pmap_.segment_values(pmap_.pieces()[pp], u, p.data());
    qmap_.segment_values(qmap_.pieces()[qp], u + dp(), q.data());
    const std::size_t K = mult_.size();
    return psi_segments<double>(mult_, std::span<const double>(p.data(), K), std::span<const double>(q.data(), K), j_);
  }

  Grad eval_grad(std::size_t pp, std::size_t qp, const double* u) const {
    std::array<Grad, kMaxJointDim> uu{};
    for (int i = 0; i < dim(); ++i) uu[static_cast<std::size_t>(i)] = Grad::variable(u[i], i);
    std::array<Grad, kMaxSegments> p{};
    std::array<Grad, kMaxSegments> q{};
    pmap_.segment_values(pmap_.pieces()[pp], uu.data(), p.data());
    qmap_.segment_values(qmap_.pieces()[qp], uu.data() + dp(), q.data());
    const std::size_t K = mult_.size();
    return psi_segments<Grad>(mult_, std::span<const Grad>(p.data(), K), std::span<const Grad>(q.data(), K), j_);
  }

  // Dense p and q at a point, clamped at zero against rounding.
  void dense(const Point& pt, std::vector<double>& p, std::vector<double>& q) const {
    std::vector<double> ps(mult_.size());
    std::vector<double> qs(mult_.size());
    pmap_.segment_values(pmap_.pieces()[pt.p_piece], pt.u.data(), ps.data());
    qmap_.segment_values(qmap_.pieces()[pt.q_piece], pt.u.data() + dp(), qs.data());
    for (auto& x : ps) x = std::max(0.0, x);
    for (auto& x : qs) x = std::max(0.0, x);
    p = expand(config_, ps);
    q = expand(config_, qs);
  }

  // Per-piece bounds on sum_s m_s |d x_s / d u_i| over the piece, and on the
  // mixed second derivative of the 2-D map.
  struct SideBounds {
    std::array<double, SideMap::kMaxDim> slope{};
    double cross = 0.0;
  };

  SideBounds side_bounds(const SideMap& map, std::size_t piece) const {
    SideBounds out;
    const int d = map.dim();
    if (d == 0) return out;
    using D2 = Dual<SideMap::kMaxDim>;
    const std::size_t K = mult_.size();
    std::array<D2, kMaxSegments> v{};
    const int corners = 1 << d;
    std::array<std::array<double, kMaxSegments>, 4> du1{};
    for (int c = 0; c < corners; ++c) {
      std::array<D2, SideMap::kMaxDim> u{};
      for (int i = 0; i < d; ++i) u[static_cast<std::size_t>(i)] = D2::variable((c >> i) & 1, i);
      map.segment_values(map.pieces()[piece], u.data(), v.data());
      for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < K; ++k) s += mult_[k] * std::abs(v[k].d[static_cast<std::size_t>(i)]);
        out.slope[static_cast<std::size_t>(i)] = std::max(out.slope[static_cast<std::size_t>(i)], s);
      }
      if (d == 2) {
        for (std::size_t k = 0; k < K; ++k) du1[static_cast<std::size_t>(c)][k] = v[k].d[1];
      }
    }
    if (d == 2) {
      // d/du0 of d x/du1 is constant: the map is bilinear.
      for (std::size_t k = 0; k < K; ++k) out.cross += mult_[k] * std::abs(du1[1][k] - du1[0][k]);
    }
    return out;
  }

  const Configuration& config() const { return config_; }
  int j() const { return j_; }

 private:
  const Configuration& config_;
  int j_;
  SideMap pmap_;
  SideMap qmap_;
  std::vector<int> mult_;
};

// Grid points of one side piece with the vector used in the bilinear split
// Psi = j! <A(p), B(q)>, A = (m E^p, m p), B = (q, E^q).
struct SideGrid {
  std::size_t n = 0;
  std::size_t width = 0;
  std::vector<double> vec;
  std::vector<std::array<double, SideMap::kMaxDim>> u;
};

SideGrid build_side_grid(const ConfigSearch& cs, const SideMap& map, std::size_t piece, bool p_side, int G) {
  const int d = map.dim();
  const std::size_t K = cs.segments();
  std::vector<int> mult;
  for (const auto& s : cs.config().segments) mult.push_back(s.mult);
  SideGrid g;
  g.width = 2 * K;
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(G);
  g.n = n;
  g.vec.resize(n * g.width);
  g.u.resize(n);
  std::array<double, kMaxSegments> v{};
  std::array<double, kMaxSegments> e{};
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::array<double, SideMap::kMaxDim> u{};
    std::size_t rem = idx;
    for (int i = 0; i < d; ++i) {
      u[static_cast<std::size_t>(i)] = static_cast<double>(rem % static_cast<std::size_t>(G)) / (G - 1);
      rem /= static_cast<std::size_t>(G);
    }
    g.u[idx] = u;
    map.segment_values(map.pieces()[piece], u.data(), v.data());
    segment_loo_elem_sym<double>(mult, std::span<const double>(v.data(), K), cs.j(), std::span<double>(e.data(), K));
    double* out = &g.vec[idx * g.width];
    for (std::size_t s = 0; s < K; ++s) {
      if (p_side) {
        out[s] = mult[s] * e[s];
        out[K + s] = mult[s] * v[s];
      } else {
        out[s] = v[s];
        out[K + s] = e[s];
      }
    }
  }
  return g;
}

class TopList {
 public:
  explicit TopList(std::size_t cap) : cap_(cap) {}
  double threshold() const { return items_.size() < cap_ ? -1.0 : items_.front().value; }
  void offer(const Candidate& c) {
    auto cmp = [](const Candidate& a, const Candidate& b) { return a.value > b.value; };
    if (items_.size() < cap_) {
      items_.push_back(c);
      std::push_heap(items_.begin(), items_.end(), cmp);
    } else if (c.value > items_.front().value) {
      std::pop_heap(items_.begin(), items_.end(), cmp);
      items_.back() = c;
      std::push_heap(items_.begin(), items_.end(), cmp);
    }
  }
  std::vector<Candidate> sorted() const {
    auto out = items_;
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
    return out;
  }

 private:
  std::size_t cap_;
  std::vector<Candidate> items_;
};

struct ScanResult {
  bool feasible = false;
  double grid_value = -1.0;
  std::vector<Candidate> top;
};

ScanResult grid_scan(const ConfigSearch& cs, int G) {
  ScanResult res;
  if (!cs.feasible()) return res;
  res.feasible = true;
  const double scale = factorial(cs.j());
  TopList top(kTopKeep);
  const std::size_t dp = static_cast<std::size_t>(cs.dp());
  const std::size_t dq = static_cast<std::size_t>(cs.dq());
  for (std::size_t pp = 0; pp < cs.pmap().pieces().size(); ++pp) {
    const SideGrid A = build_side_grid(cs, cs.pmap(), pp, true, G);
    for (std::size_t qp = 0; qp < cs.qmap().pieces().size(); ++qp) {
      const SideGrid B = build_side_grid(cs, cs.qmap(), qp, false, G);
      const std::size_t w = A.width;
      for (std::size_t i = 0; i < A.n; ++i) {
        const double* a = &A.vec[i * w];
        for (std::size_t k = 0; k < B.n; ++k) {
          const double* bv = &B.vec[k * w];
          double s = 0.0;
          for (std::size_t t = 0; t < w; ++t) s += a[t] * bv[t];
          s *= scale;
          if (s > top.threshold()) {
            Candidate c{s, pp, qp, {}};
            for (std::size_t t = 0; t < dp; ++t) c.u[t] = A.u[i][t];
            for (std::size_t t = 0; t < dq; ++t) c.u[dp + t] = B.u[k][t];
            top.offer(c);
          }
        }
      }
    }
  }
  res.top = top.sorted();
  if (!res.top.empty()) res.grid_value = res.top.front().value;
  return res;
}

std::vector<Candidate> pick_starts(const std::vector<Candidate>& top, int dim, int G) {
  std::vector<Candidate> starts;
  const double sep = 2.0 / std::max(1, G - 1);
  for (const auto& c : top) {
    bool far = true;
    for (const auto& s : starts) {
      if (s.p_piece != c.p_piece || s.q_piece != c.q_piece) continue;
      double dist = 0.0;
      for (int i = 0; i < dim; ++i) dist = std::max(dist, std::abs(s.u[static_cast<std::size_t>(i)] - c.u[static_cast<std::size_t>(i)]));
      if (dist <= sep) far = false;
    }
    if (far) starts.push_back(c);
    if (starts.size() >= kMaxStarts) break;
  }
  return starts;
}

// Derivative-free pattern search over all 3^d - 1 directions, clamped to the cube.
Point pattern_search(const ConfigSearch& cs, const Candidate& start, int G) {
  const int d = cs.dim();
  Point cur;
  cur.p_piece = start.p_piece;
  cur.q_piece = start.q_piece;
  cur.u = start.u;
  cur.value = cs.eval(cur.p_piece, cur.q_piece, cur.u.data());
  if (d == 0) return cur;

  std::vector<std::array<int, kMaxJointDim>> dirs;
  int total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::array<int, kMaxJointDim> dir{};
    int c = code;
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      dir[static_cast<std::size_t>(i)] = c % 3 - 1;
      if (dir[static_cast<std::size_t>(i)] != 0) zero = false;
      c /= 3;
    }
    if (!zero) dirs.push_back(dir);
  }

  double step = 1.0 / std::max(1, G - 1);
  int guard = 0;
  while (step >= kFinestStep && guard++ < 20000) {
    double best = cur.value;
    std::array<double, kMaxJointDim> best_u = cur.u;
    for (const auto& dir : dirs) {
      std::array<double, kMaxJointDim> u = cur.u;
      bool moved = false;
      for (int i = 0; i < d; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const double nu = std::clamp(u[ii] + step * dir[ii], 0.0, 1.0);
        if (nu != u[ii]) moved = true;
        u[ii] = nu;
      }
      if (!moved) continue;
      const double v = cs.eval(cur.p_piece, cur.q_piece, u.data());
      if (v > best) {
        best = v;
        best_u = u;
      }
    }
    if (best > cur.value) {
      cur.value = best;
      cur.u = best_u;
    } else {
      step *= 0.5;
    }
  }
  return cur;
}

struct CertifyOutcome {
  double upper = -1.0;
  Point best;
};

// Second-order branch and bound on one piece pair. Cells whose Taylor bound
// g(c) + |grad g(c)| . r + r^T H r / 2 is at most threshold + tol are closed.
CertifyOutcome certify_piece(const ConfigSearch& cs, std::size_t pp, std::size_t qp, double threshold, double tol,
                             std::size_t max_cells) {
  const int d = cs.dim();
  const int dp = cs.dp();
  const double j = cs.j();
  CertifyOutcome out;
  out.best.p_piece = pp;
  out.best.q_piece = qp;

  const auto bp = cs.side_bounds(cs.pmap(), pp);
  const auto bq = cs.side_bounds(cs.qmap(), qp);
  std::array<double, kMaxJointDim> S{};
  for (int i = 0; i < d; ++i) {
    S[static_cast<std::size_t>(i)] = i < dp ? bp.slope[static_cast<std::size_t>(i)] : bq.slope[static_cast<std::size_t>(i - dp)];
  }
  double H[kMaxJointDim][kMaxJointDim] = {};
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const bool ip = i < dp;
      const bool kp = k < dp;
      double h = (ip == kp ? j * (j - 1.0) : 2.0 * j) * S[static_cast<std::size_t>(i)] * S[static_cast<std::size_t>(k)];
      if (ip == kp && i != k) h += (j + 1.0) * (ip ? bp.cross : bq.cross);
      H[i][k] = h;
    }
  }

  struct Cell {
    double bound;
    std::array<double, kMaxJointDim> lo;
    std::array<double, kMaxJointDim> hi;
    bool operator<(const Cell& o) const { return bound < o.bound; }
  };

  double best_threshold = threshold;
  auto make_cell = [&](const std::array<double, kMaxJointDim>& lo, const std::array<double, kMaxJointDim>& hi) {
    std::array<double, kMaxJointDim> c{};
    std::array<double, kMaxJointDim> r{};
    for (int i = 0; i < d; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      c[ii] = 0.5 * (lo[ii] + hi[ii]);
      r[ii] = 0.5 * (hi[ii] - lo[ii]);
    }
    const Grad g = cs.eval_grad(pp, qp, c.data());
    if (g.v > out.best.value) {
      out.best.value = g.v;
      out.best.u = c;
    }
    best_threshold = std::max(best_threshold, g.v);
    double bound = g.v;
    for (int i = 0; i < d; ++i) bound += std::abs(g.d[static_cast<std::size_t>(i)]) * r[static_cast<std::size_t>(i)];
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) bound += 0.5 * H[i][k] * r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(k)];
    }
    return Cell{bound, lo, hi};
  };

  std::array<double, kMaxJointDim> lo{};
  std::array<double, kMaxJointDim> hi{};
  for (int i = 0; i < d; ++i) hi[static_cast<std::size_t>(i)] = 1.0;
  std::priority_queue<Cell> open;
  open.push(make_cell(lo, hi));
  double closed_max = -1.0;
  std::size_t processed = 0;
  while (!open.empty()) {
    Cell cell = open.top();
    if (cell.bound <= best_threshold + tol) break;  // every open cell is now closable
    if (processed >= max_cells) break;
    open.pop();
    ++processed;
    int split = 0;
    for (int i = 1; i < d; ++i) {
      if (cell.hi[static_cast<std::size_t>(i)] - cell.lo[static_cast<std::size_t>(i)] >
          cell.hi[static_cast<std::size_t>(split)] - cell.lo[static_cast<std::size_t>(split)]) {
        split = i;
      }
    }
    const auto s = static_cast<std::size_t>(split);
    const double mid = 0.5 * (cell.lo[s] + cell.hi[s]);
    auto left_hi = cell.hi;
    left_hi[s] = mid;
    auto right_lo = cell.lo;
    right_lo[s] = mid;
    for (const Cell& child : {make_cell(cell.lo, left_hi), make_cell(right_lo, cell.hi)}) {
      if (child.bound <= best_threshold + tol) {
        closed_max = std::max(closed_max, child.bound);
      } else {
        open.push(child);
      }
    }
  }
  double upper = closed_max;
  if (!open.empty()) upper = std::max(upper, open.top().bound);
  if (d == 0) upper = out.best.value;
  out.upper = std::max(upper, out.best.value);
  return out;
}

ConfigMax finish(const ConfigSearch& cs, const Point& best, double grid_value) {
  ConfigMax m;
  m.feasible = true;
  m.value = best.value;
  m.grid_value = grid_value;
  cs.dense(best, m.p, m.q);
  return m;
}

Point refine_from(const ConfigSearch& cs, const ScanResult& scan, int G, bool refine) {
  Point best;
  if (scan.top.empty()) return best;
  const Candidate& first = scan.top.front();
  best.value = first.value;
  best.p_piece = first.p_piece;
  best.q_piece = first.q_piece;
  best.u = first.u;
  // Recompute at full precision; the grid value came from the split dot product.
  best.value = cs.eval(best.p_piece, best.q_piece, best.u.data());
  if (!refine) return best;
  for (const auto& start : pick_starts(scan.top, cs.dim(), G)) {
    const Point p = pattern_search(cs, start, G);
    if (p.value > best.value) best = p;
  }
  return best;
}

double slack_for(const ConfigSearch& cs, double h) {
  if (!cs.feasible() || cs.dim() == 0) return 0.0;
  const double j = cs.j();
  double worst = 0.0;
  for (std::size_t pp = 0; pp < cs.pmap().pieces().size(); ++pp) {
    const auto bp = cs.side_bounds(cs.pmap(), pp);
    for (std::size_t qp = 0; qp < cs.qmap().pieces().size(); ++qp) {
      const auto bq = cs.side_bounds(cs.qmap(), qp);
      double L2 = 0.0;
      for (int i = 0; i < cs.dp(); ++i) L2 += std::pow((j + 1.0) * bp.slope[static_cast<std::size_t>(i)], 2);
      for (int i = 0; i < cs.dq(); ++i) L2 += std::pow((j + 1.0) * bq.slope[static_cast<std::size_t>(i)], 2);
      worst = std::max(worst, std::sqrt(L2) * h * std::sqrt(static_cast<double>(cs.dim())) / 2.0);
    }
  }
  return worst;
}

void check_options(const MaximizeOptions& o) {
  if (o.grid < 2) throw std::invalid_argument("grid resolution must be at least 2");
}

bool tag_less(const Configuration& a, const Configuration& b) {
  return std::tie(a.family_tag, a.l1, a.l2, a.choices) < std::tie(b.family_tag, b.l1, b.l2, b.choices);
}

// Best configuration by value; near-ties go to the lexicographically smaller tag.
bool better(double va, const Configuration& a, double vb, const Configuration& b) {
  const double tol = 1e-13 * std::max({1e-300, std::abs(va), std::abs(vb)});
  if (va > vb + tol) return true;
  if (vb > va + tol) return false;
  return tag_less(a, b);
}

SubdomainMax maximize_family(std::vector<Configuration> configs, int b, int j, const MaximizeOptions& options,
                             MSelector which, bool relaxed) {
  check_options(options);
  const PsiParams params(b, j);
  const std::size_t n = configs.size();
  std::vector<ScanResult> scans(n);
  parallel_for(n, [&](std::size_t i) {
    ConfigSearch cs(configs[i], params);
    scans[i] = grid_scan(cs, options.grid);
  }, options.threads);

  double best_grid = -1.0;
  for (const auto& s : scans) best_grid = std::max(best_grid, s.grid_value);
  if (best_grid < 0.0) throw std::runtime_error("no feasible configuration for " + to_string(which));

  const double h = 1.0 / (options.grid - 1);
  std::vector<Point> points(n);
  std::vector<bool> refined(n, false);
  parallel_for(n, [&](std::size_t i) {
    if (!scans[i].feasible) return;
    ConfigSearch cs(configs[i], params);
    const bool promising = scans[i].grid_value + slack_for(cs, h) >= best_grid;
    points[i] = refine_from(cs, scans[i], options.grid, options.refine && promising);
    refined[i] = true;
  }, options.threads);

  std::size_t arg = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!refined[i]) continue;
    if (arg == n || better(points[i].value, configs[i], points[arg].value, configs[arg])) arg = i;
  }

  SubdomainMax out;
  out.which = which;
  out.upper_bound_only = relaxed;
  out.candidates = n;

  if (options.certify) {
    const double threshold = points[arg].value;
    std::vector<double> uppers(n, -1.0);
    std::vector<Point> found(n);
    parallel_for(n, [&](std::size_t i) {
      if (!refined[i]) return;
      ConfigSearch cs(configs[i], params);
      found[i] = points[i];
      for (std::size_t pp = 0; pp < cs.pmap().pieces().size(); ++pp) {
        for (std::size_t qp = 0; qp < cs.qmap().pieces().size(); ++qp) {
          const auto c = certify_piece(cs, pp, qp, threshold, options.certify_tol, options.certify_max_cells);
          uppers[i] = std::max(uppers[i], c.upper);
          if (c.best.value > found[i].value) found[i] = c.best;
        }
      }
    }, options.threads);
    for (std::size_t i = 0; i < n; ++i) {
      if (!refined[i]) continue;
      points[i] = found[i];
      if (better(points[i].value, configs[i], points[arg].value, configs[arg])) arg = i;
    }
    double upper = 0.0;
    for (double u : uppers) upper = std::max(upper, u);
    out.certified_excess = std::max(0.0, upper - points[arg].value);
    ConfigSearch cs(configs[arg], params);
    out.argmax = finish(cs, points[arg], scans[arg].grid_value);
    out.argmax.certified_upper = upper;
  } else {
    ConfigSearch cs(configs[arg], params);
    out.argmax = finish(cs, points[arg], scans[arg].grid_value);
  }
  out.value = out.argmax.value;
  out.argmax_config = std::move(configs[arg]);
  return out;
}

}  // namespace

ConfigMax maximize_config(const Configuration& config, const PsiParams& params, const MaximizeOptions& options) {
  check_options(options);
  ConfigSearch cs(config, params);
  ConfigMax m;
  if (!cs.feasible()) throw std::invalid_argument("maximize_config: empty box for " + config.describe());
  const ScanResult scan = grid_scan(cs, options.grid);
  Point best = refine_from(cs, scan, options.grid, options.refine);
  double upper = -1.0;
  if (options.certify) {
    for (std::size_t pp = 0; pp < cs.pmap().pieces().size(); ++pp) {
      for (std::size_t qp = 0; qp < cs.qmap().pieces().size(); ++qp) {
        const auto c = certify_piece(cs, pp, qp, best.value, options.certify_tol, options.certify_max_cells);
        upper = std::max(upper, c.upper);
        if (c.best.value > best.value) best = c.best;
      }
    }
  }
  m = finish(cs, best, scan.grid_value);
  m.certified_upper = upper;
  return m;
}

double certify_excess(const Configuration& config, const PsiParams& params, double grid_step) {
  if (grid_step < 0.0) throw std::invalid_argument("certify_excess: negative grid step");
  ConfigSearch cs(config, params);
  return slack_for(cs, grid_step);
}

SubdomainMax compute_Mi(const PartitionSpec& spec, MSelector which, int b, int j, const MaximizeOptions& options) {
  auto configs = enumerate_candidates(spec, which, b, j, options.zero_restriction);
  return maximize_family(std::move(configs), b, j, options, which, selector_is_relaxed(spec.kind, which));
}

SubdomainMax global_max(int b, int j, const MaximizeOptions& options) {
  auto configs = global_max_candidates(b, j, options.zero_restriction);
  return maximize_family(std::move(configs), b, j, options, MSelector::M2, false);
}

}  // namespace hashbound
