#include "hashbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "hashbound/parallel.hpp"
#include "hashbound/psi.hpp"

namespace hashbound {

namespace {

constexpr std::size_t kBatch = 4096;
constexpr std::size_t kAttemptFactor = 10000;  // 99.99% rejection

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Uniform on (lo, hi].
double uniform_left_open(std::mt19937_64& rng, double lo, double hi) {
  return hi - (hi - lo) * uniform01(rng);
}

std::vector<double> scaled_simplex(std::mt19937_64& rng, int n, double mass) {
  std::vector<double> v = sample_simplex(rng, n);
  for (double& x : v) x *= mass;
  return v;
}

double psi(const std::vector<double>& p, const std::vector<double>& q, int j) { return psi_fast(p, q, j); }

// One draw from cell `cell` of the partition, or nullopt on rejection.
std::optional<std::vector<double>> draw_cell(std::mt19937_64& rng, const PartitionSpec& spec, int b, int cell) {
  const double eps = spec.epsilon;
  std::vector<double> p;
  if (spec.kind == PartitionKind::MaxValue) {
    if (cell == 0) {
      p = sample_simplex(rng, b);
    } else {
      // (1-eps) e_i + eps y covers the whole cell.
      p = scaled_simplex(rng, b, eps);
      p[static_cast<std::size_t>(cell - 1)] += 1.0 - eps;
    }
    if (!in_max_cell(p, eps, cell)) return std::nullopt;
  } else {
    if (cell == 0) {
      // eps + (1 - b eps) y covers the whole cell.
      p = scaled_simplex(rng, b, 1.0 - b * eps);
      for (double& x : p) x += eps;
    } else {
      p = sample_simplex(rng, b);
      const auto it = std::min_element(p.begin(), p.end());
      std::iter_swap(it, p.begin() + (cell - 1));
    }
    if (!in_min_cell(p, eps, cell)) return std::nullopt;
  }
  return p;
}

std::pair<int, int> cells_for(PartitionKind kind, MSelector which, int b) {
  switch (which) {
    case MSelector::M1:
      return {0, 0};
    case MSelector::M2:
      return {0, 1};
    case MSelector::M3:
      return {1, 1};
    case MSelector::M4:
      return {1, kind == PartitionKind::MaxValue ? b : 2};
  }
  throw std::logic_error("cells_for: bad selector");
}

}  // namespace

std::mt19937_64 batch_rng(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t c = splitmix64(a ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> sample_simplex(std::mt19937_64& rng, int b) {
  if (b < 1) throw std::invalid_argument("sample_simplex: b must be positive");
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> v(static_cast<std::size_t>(b));
  double sum = 0.0;
  for (double& x : v) {
    x = ex(rng);
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

bool in_max_cell(const std::vector<double>& p, double eps, int cell) {
  const double top = 1.0 - eps;
  if (cell == 0) return std::all_of(p.begin(), p.end(), [&](double x) { return x <= top; });
  if (cell < 1 || cell > static_cast<int>(p.size())) throw std::invalid_argument("in_max_cell: bad cell");
  return p[static_cast<std::size_t>(cell - 1)] > top;
}

bool in_min_cell(const std::vector<double>& p, double eps, int cell) {
  if (cell == 0) return std::all_of(p.begin(), p.end(), [&](double x) { return x >= eps; });
  if (cell < 1 || cell > static_cast<int>(p.size())) throw std::invalid_argument("in_min_cell: bad cell");
  const std::size_t i = static_cast<std::size_t>(cell - 1);
  if (!(p[i] < eps)) return false;
  for (std::size_t h = 0; h < p.size(); ++h) {
    if (h < i && !(p[h] > p[i])) return false;
    if (p[h] < p[i]) return false;
  }
  return true;
}

SampleReport sample_subdomain(const PartitionSpec& spec, MSelector which, int b, int j, std::size_t count,
                              std::uint64_t seed, int threads) {
  static_cast<void>(PsiParams(b, j));
  spec.validate(b, j);
  const auto [pc, qc] = cells_for(spec.kind, which, b);

  struct Batch {
    std::size_t accepted = 0;
    std::size_t attempts = 0;
    double best = -1.0;
    std::vector<double> p, q;
  };
  const std::size_t batches = (count + kBatch - 1) / kBatch;
  std::vector<Batch> out(batches);
  parallel_for(
      batches,
      [&](std::size_t bi) {
        const std::size_t target = std::min(kBatch, count - bi * kBatch);
        auto rng = batch_rng(seed, bi);
        Batch& r = out[bi];
        while (r.accepted < target && r.attempts < target * kAttemptFactor) {
          ++r.attempts;
          auto p = draw_cell(rng, spec, b, pc);
          auto q = draw_cell(rng, spec, b, qc);
          if (!p || !q) continue;
          ++r.accepted;
          const double v = psi(*p, *q, j);
          if (v > r.best) {
            r.best = v;
            r.p = std::move(*p);
            r.q = std::move(*q);
          }
        }
      },
      threads);

  SampleReport rep;
  rep.which = which;
  rep.spec = spec;
  rep.b = b;
  rep.j = j;
  rep.seed = seed;
  rep.requested = count;
  double best = -1.0;
  for (const Batch& r : out) {
    rep.accepted += r.accepted;
    rep.attempts += r.attempts;
    if (r.best > best) {
      best = r.best;
      rep.best_p = r.p;
      rep.best_q = r.q;
    }
  }
  rep.best_value = std::max(best, 0.0);
  rep.inconclusive = rep.accepted < count || rep.attempts >= kAttemptFactor * std::max<std::size_t>(rep.accepted, 1);
  return rep;
}

std::string to_string(LemmaId id) {
  switch (id) {
    case LemmaId::L6:
      return "L6";
    case LemmaId::L7:
      return "L7";
    case LemmaId::L8:
      return "L8";
    case LemmaId::L9:
      return "L9";
  }
  return "?";
}

LemmaId parse_lemma(const std::string& text) {
  for (LemmaId id : {LemmaId::L6, LemmaId::L7, LemmaId::L8, LemmaId::L9}) {
    if (to_string(id) == text) return id;
  }
  throw std::invalid_argument("unknown lemma id: " + text);
}

LemmaReport check_lemma_inequalities(LemmaId which, int b, int j, std::size_t count, std::uint64_t seed,
                                     const LemmaOptions& options) {
  static_cast<void>(PsiParams(b, j));
  LemmaReport rep;
  rep.which = which;
  rep.b = b;
  rep.j = j;
  rep.samples = count;
  rep.worst_gap = -std::numeric_limits<double>::infinity();
  const std::size_t n = static_cast<std::size_t>(b);

  for (std::size_t s = 0; s < count; ++s) {
    auto rng = batch_rng(seed, s);
    std::vector<double> p, q, p2, q2;
    switch (which) {
      case LemmaId::L6: {
        p = sample_simplex(rng, b);
        q = sample_simplex(rng, b);
        if (p[0] > p[1]) std::swap(p[0], p[1]);
        if (q[0] > q[1]) std::swap(q[0], q[1]);
        p2 = p;
        q2 = q;
        std::swap(q2[0], q2[1]);
        break;
      }
      case LemmaId::L7: {
        const int support = j - 1;
        p.assign(n, 0.0);
        const auto head = sample_simplex(rng, support);
        std::copy(head.begin(), head.end(), p.begin());
        const double pmax = *std::max_element(head.begin(), head.end());
        const double alpha = options.boundary ? 1.0 - pmax : (1.0 - pmax) * uniform01(rng);
        q = sample_simplex(rng, b);
        std::sort(q.begin(), q.begin() + support);
        p2.assign(n, 0.0);
        p2[0] = 1.0 - alpha;
        p2[1] = alpha;
        q2 = q;
        break;
      }
      case LemmaId::L8: {
        const double eps = uniform_left_open(rng, 0.0, 1.0 / (j + 1));
        const double p1 = options.boundary ? 1.0 - eps : 1.0 - eps * uniform01(rng);
        const auto rest = scaled_simplex(rng, b - 1, 1.0 - p1);
        p.assign(1, p1);
        p.insert(p.end(), rest.begin(), rest.end());
        q = sample_simplex(rng, b);
        std::sort(q.begin(), q.end());
        p2 = p;
        q2 = q;
        q2[1] = q[0] + q[1];
        q2[0] = 0.0;
        break;
      }
      case LemmaId::L9: {
        const double eps = 0.5 * uniform01(rng);
        if (!(eps > 0.0)) continue;
        const double delta = options.boundary ? eps : uniform_left_open(rng, 0.0, eps);
        const double q1 = 1.0 - eps * uniform01(rng);
        const auto qrest = scaled_simplex(rng, b - 1, 1.0 - q1);
        q.assign(1, q1);
        q.insert(q.end(), qrest.begin(), qrest.end());
        const auto prest = scaled_simplex(rng, b - 1, eps - delta);
        p.assign(1, 1.0 - eps + delta);
        p.insert(p.end(), prest.begin(), prest.end());
        p2 = p;
        p2[0] = 1.0 - eps;
        p2[1] += delta;
        q2 = q;
        break;
      }
    }
    const double lhs = psi(p, q, j) + options.fault;
    const double rhs = psi(p2, q2, j);
    const double gap = lhs - rhs;
    rep.worst_gap = std::max(rep.worst_gap, gap);
    if (gap > options.slack) {
      if (rep.violations == 0) {
        rep.counterexample_p = p;
        rep.counterexample_q = q;
      }
      ++rep.violations;
    }
  }
  return rep;
}

OracleReport check_psi_oracle(int b, int j, std::size_t count, std::uint64_t seed, double fault) {
  const PsiParams params(b, j);
  OracleReport rep;
  rep.b = b;
  rep.j = j;
  rep.samples = count;
  for (std::size_t s = 0; s < count; ++s) {
    auto rng = batch_rng(seed, s);
    // Mix interior points with sparse ones, where cancellation is likelier.
    auto p = sample_simplex(rng, b);
    auto q = sample_simplex(rng, b);
    if (s % 3 == 1) p[s % static_cast<std::size_t>(b)] = 0.0;
    const auto dp = DistVec::relaxed(p);
    const auto dq = DistVec::relaxed(q);
    const double diff = std::abs(psi_fast(dp, dq, params) + fault - psi_naive(dp, dq, params));
    rep.max_abs_diff = std::max(rep.max_abs_diff, diff);
  }
  rep.passed = rep.max_abs_diff <= 1e-12;
  return rep;
}

}  // namespace hashbound
