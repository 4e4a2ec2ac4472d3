#include "hashbound/psi.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace hashbound {

namespace {

std::vector<double> check_nonnegative(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("DistVec: empty vector");
  for (double x : values) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("DistVec: entries must be finite and nonnegative");
    }
  }
  return values;
}

void check_dims(std::size_t p, std::size_t q, int b) {
  if (p != q || p != static_cast<std::size_t>(b)) {
    throw std::invalid_argument("psi: dimension mismatch (p has " + std::to_string(p) + ", q has " +
                                std::to_string(q) + ", b = " + std::to_string(b) + ")");
  }
}

struct BinomialTable {
  static constexpr int kN = 65;
  double c[kN][kN] = {};
  BinomialTable() {
    for (int n = 0; n < kN; ++n) {
      c[n][0] = 1.0;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0.0);
    }
  }
};

const BinomialTable& binomials() {
  static const BinomialTable table;
  return table;
}

}  // namespace

DistVec DistVec::normalized(std::vector<double> values) {
  values = check_nonnegative(std::move(values));
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("DistVec: entries sum to " + std::to_string(sum) + ", expected 1");
  }
  return DistVec(std::move(values), false);
}

DistVec DistVec::relaxed(std::vector<double> values) {
  return DistVec(check_nonnegative(std::move(values)), true);
}

DistVec DistVec::uniform(int b) {
  if (b < 1) throw std::invalid_argument("DistVec::uniform: b must be positive");
  return DistVec(std::vector<double>(static_cast<std::size_t>(b), 1.0 / b), false);
}

PsiParams::PsiParams(int b_, int j_) : b(b_), j(j_) {
  if (b < 3 || j < 2 || j > b - 1) {
    throw std::invalid_argument("PsiParams: need 2 <= j <= b-1 (got b=" + std::to_string(b) +
                                ", j=" + std::to_string(j) + ")");
  }
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  if (n < BinomialTable::kN) return binomials().c[n][k];
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::uint64_t falling_factorial(int b, int m) {
  if (m < 0 || m > b) throw std::invalid_argument("falling_factorial: need 0 <= m <= b");
  std::uint64_t f = 1;
  for (int i = 0; i < m; ++i) f *= static_cast<std::uint64_t>(b - i);
  return f;
}

std::uint64_t int_pow(int b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(b);
  return r;
}

double falling_ratio(int b, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= static_cast<double>(b - i) / b;
  return r;
}

double elem_sym(std::span<const double> v, int j) {
  if (j < 0) throw std::invalid_argument("elem_sym: negative order");
  if (j > static_cast<int>(v.size())) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(j) + 1, 0.0);
  e[0] = 1.0;
  for (double x : v) {
    for (int d = j; d >= 1; --d) e[d] += x * e[d - 1];
  }
  return e[j];
}

double elem_sym_excluding(std::span<const double> v, int j, std::size_t excluded) {
  if (excluded >= v.size()) throw std::out_of_range("elem_sym_excluding: excluded index out of range");
  if (j < 0 || j > static_cast<int>(v.size()) - 1) {
    throw std::invalid_argument("elem_sym_excluding: need 0 <= j <= len(v)-1");
  }
  std::vector<double> e(static_cast<std::size_t>(j) + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == excluded) continue;
    for (int d = j; d >= 1; --d) e[d] += v[i] * e[d - 1];
  }
  return e[j];
}

double psi_fast(std::span<const double> p, std::span<const double> q, int j) {
  if (p.size() != q.size()) throw std::invalid_argument("psi_fast: dimension mismatch");
  const std::size_t b = p.size();
  if (j < 2 || j > static_cast<int>(b) - 1) throw std::invalid_argument("psi_fast: need 2 <= j <= b-1");
  double acc = 0.0;
  for (std::size_t m = 0; m < b; ++m) {
    acc += q[m] * elem_sym_excluding(p, j, m) + p[m] * elem_sym_excluding(q, j, m);
  }
  return factorial(j) * acc;
}

double psi_fast(const DistVec& p, const DistVec& q, const PsiParams& params) {
  check_dims(p.size(), q.size(), params.b);
  return psi_fast(p.values(), q.values(), params.j);
}

double psi_naive(const DistVec& p, const DistVec& q, const PsiParams& params) {
  check_dims(p.size(), q.size(), params.b);
  if (params.b > kPsiNaiveMaxB) {
    throw std::invalid_argument("psi_naive: b exceeds the enumeration cap of " + std::to_string(kPsiNaiveMaxB));
  }
  const int b = params.b;
  const int len = params.j + 1;
  std::vector<int> tuple(static_cast<std::size_t>(len));
  std::vector<bool> used(static_cast<std::size_t>(b), false);
  double total = 0.0;

  // Depth-first over ordered tuples of distinct indices.
  auto recurse = [&](auto&& self, int depth) -> void {
    if (depth == len) {
      double pp = 1.0;
      double qq = 1.0;
      for (int t = 0; t < len - 1; ++t) {
        pp *= p[static_cast<std::size_t>(tuple[t])];
        qq *= q[static_cast<std::size_t>(tuple[t])];
      }
      const auto last = static_cast<std::size_t>(tuple[len - 1]);
      total += pp * q[last] + qq * p[last];
      return;
    }
    for (int i = 0; i < b; ++i) {
      if (used[i]) continue;
      used[i] = true;
      tuple[depth] = i;
      self(self, depth + 1);
      used[i] = false;
    }
  };
  recurse(recurse, 0);
  return total;
}

Rational psi_uniform_closed_form_exact(const PsiParams& params) {
  std::uint64_t num = 2 * falling_factorial(params.b, params.j + 1);
  std::uint64_t den = int_pow(params.b, params.j + 1);
  const std::uint64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

double psi_uniform_closed_form(const PsiParams& params) {
  return psi_uniform_closed_form_exact(params).to_double();
}

}  // namespace hashbound
