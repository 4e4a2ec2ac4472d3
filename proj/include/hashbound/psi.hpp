#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hashbound {

/// A length-b probability vector.
///
/// The normalized constructor enforces nonnegativity and a unit sum to
/// within 1e-12. Optimizer internals may hold points whose sum drifts by
/// constraint-elimination rounding; those go through `relaxed`, which only
/// checks nonnegativity and remembers that it was not normalized.
class DistVec {
 public:
  static constexpr double kSumTolerance = 1e-12;

  static DistVec normalized(std::vector<double> values);
  static DistVec relaxed(std::vector<double> values);
  static DistVec uniform(int b);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  bool is_relaxed() const { return relaxed_; }

 private:
  DistVec(std::vector<double> values, bool relaxed) : values_(std::move(values)), relaxed_(relaxed) {}

  std::vector<double> values_;
  bool relaxed_ = false;
};

/// Alphabet size b and polynomial order j, with 2 <= j <= b-1.
struct PsiParams {
  int b;
  int j;

  PsiParams(int b, int j);
};

struct Rational {
  std::uint64_t num;
  std::uint64_t den;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Largest b accepted by psi_naive; the enumeration visits b!/(b-j-1)! tuples.
inline constexpr int kPsiNaiveMaxB = 10;

/// Literal enumeration of ordered distinct (j+1)-tuples. Test oracle only.
double psi_naive(const DistVec& p, const DistVec& q, const PsiParams& params);

/// Psi_j via leave-one-out elementary symmetric functions, O(b^2 j).
double psi_fast(const DistVec& p, const DistVec& q, const PsiParams& params);
double psi_fast(std::span<const double> p, std::span<const double> q, int j);

/// e_j(v) and e_j of v with coordinate `excluded` removed. e_0 = 1.
double elem_sym(std::span<const double> v, int j);
double elem_sym_excluding(std::span<const double> v, int j, std::size_t excluded);

/// Psi_j(u;u) for the uniform u: 2 * b^{(j+1) falling} / b^{j+1}.
Rational psi_uniform_closed_form_exact(const PsiParams& params);
double psi_uniform_closed_form(const PsiParams& params);

/// b (b-1) ... (b-m+1). Exact for the small arguments used here.
std::uint64_t falling_factorial(int b, int m);
std::uint64_t int_pow(int b, int e);
double falling_ratio(int b, int m);  // b^{(m falling)} / b^m

double binomial(int n, int k);
double factorial(int n);

// ---------------------------------------------------------------------------
// Block-structured evaluation.
//
// A pair (p, q) whose coordinates are grouped into segments: segment s holds
// mult[s] coordinates, all with value p[s] in p and q[s] in q. This is the
// shape every candidate configuration has, and it lets Psi_j be evaluated in
// O(K j^2) for K segments regardless of b.

inline constexpr int kMaxSegments = 12;
inline constexpr int kMaxDegree = 16;

/// out[s] = e_j of the multiset {v[t] repeated mult[t] times} with one copy
/// of v[s] removed (0 when mult[s] == 0).
template <class T>
void segment_loo_elem_sym(std::span<const int> mult, std::span<const T> v, int j, std::span<T> out);

template <class T>
T psi_segments(std::span<const int> mult, std::span<const T> p, std::span<const T> q, int j);

}  // namespace hashbound

#include "hashbound/psi_segments.ipp"
