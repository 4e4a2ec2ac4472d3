// Template bodies for psi.hpp. Included from psi.hpp only.

namespace hashbound {

namespace detail {

template <class T>
using Poly = std::array<T, kMaxDegree + 1>;

// c = a * b truncated at degree j.
template <class T>
void poly_mul(const Poly<T>& a, const Poly<T>& b, int j, Poly<T>& c) {
  for (int n = 0; n <= j; ++n) {
    T acc = a[0] * b[n];
    for (int i = 1; i <= n; ++i) acc = acc + a[i] * b[n - i];
    c[n] = acc;
  }
}

// (1 + v x)^m truncated at degree j.
template <class T>
void binomial_power(const T& v, int m, int j, Poly<T>& out) {
  T pw = T(1.0);
  for (int n = 0; n <= j; ++n) {
    if (n <= m) {
      out[n] = pw * binomial(m, n);
      pw = pw * v;
    } else {
      out[n] = T(0.0);
    }
  }
}

}  // namespace detail

template <class T>
void segment_loo_elem_sym(std::span<const int> mult, std::span<const T> v, int j, std::span<T> out) {
  using detail::Poly;
  const int k = static_cast<int>(mult.size());
  if (k > kMaxSegments || j > kMaxDegree || j < 0) {
    throw std::invalid_argument("segment_loo_elem_sym: too many segments or degree too high");
  }
  std::array<Poly<T>, kMaxSegments> powers;
  std::array<Poly<T>, kMaxSegments + 1> prefix;
  std::array<Poly<T>, kMaxSegments + 1> suffix;

  for (int s = 0; s < k; ++s) detail::binomial_power(v[s], mult[s], j, powers[s]);

  prefix[0].fill(T(0.0));
  prefix[0][0] = T(1.0);
  for (int s = 0; s < k; ++s) detail::poly_mul(prefix[s], powers[s], j, prefix[s + 1]);

  suffix[k].fill(T(0.0));
  suffix[k][0] = T(1.0);
  for (int s = k - 1; s >= 0; --s) detail::poly_mul(powers[s], suffix[s + 1], j, suffix[s]);

  Poly<T> rest;
  for (int s = 0; s < k; ++s) {
    if (mult[s] <= 0) {
      out[s] = T(0.0);
      continue;
    }
    detail::poly_mul(prefix[s], suffix[s + 1], j, rest);
    // Coefficient of x^j in rest(x) * (1 + v_s x)^{m_s - 1}.
    const int m = mult[s] - 1;
    T acc = T(0.0);
    T pw = T(1.0);
    for (int d = 0; d <= j && d <= m; ++d) {
      acc = acc + rest[j - d] * (pw * binomial(m, d));
      pw = pw * v[s];
    }
    out[s] = acc;
  }
}

template <class T>
T psi_segments(std::span<const int> mult, std::span<const T> p, std::span<const T> q, int j) {
  const std::size_t k = mult.size();
  std::array<T, kMaxSegments> ep;
  std::array<T, kMaxSegments> eq;
  segment_loo_elem_sym<T>(mult, p, j, std::span<T>(ep.data(), k));
  segment_loo_elem_sym<T>(mult, q, j, std::span<T>(eq.data(), k));
  T acc = T(0.0);
  for (std::size_t s = 0; s < k; ++s) {
    if (mult[s] <= 0) continue;
    acc = acc + (q[s] * ep[s] + p[s] * eq[s]) * static_cast<double>(mult[s]);
  }
  return acc * factorial(j);
}

}  // namespace hashbound
