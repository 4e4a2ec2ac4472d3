#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hashbound/configuration.hpp"

namespace hashbound {

/// 64-bit generator for batch `index` of a run seeded with `seed`.
std::mt19937_64 batch_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform point of the probability simplex of dimension b.
std::vector<double> sample_simplex(std::mt19937_64& rng, int b);

/// Membership in the partition cells. Cell 0 is the balanced one; cell i
/// (1-based) holds the unbalanced distributions at coordinate i.
bool in_max_cell(const std::vector<double>& p, double eps, int cell);
bool in_min_cell(const std::vector<double>& p, double eps, int cell);

struct SampleReport {
  MSelector which = MSelector::M1;
  PartitionSpec spec{PartitionKind::MaxValue, 0.0};
  int b = 0;
  int j = 0;
  std::uint64_t seed = 0;
  std::size_t requested = 0;
  std::size_t accepted = 0;
  std::size_t attempts = 0;
  double best_value = 0.0;
  std::vector<double> best_p;
  std::vector<double> best_q;
  bool inconclusive = false;  // rejection rate of 99.99% or more
};

/// Draws `count` pairs from the subdomain pair of the selector and records
/// the largest Psi_j seen. Deterministic for a fixed seed and thread count
/// independent.
SampleReport sample_subdomain(const PartitionSpec& spec, MSelector which, int b, int j, std::size_t count,
                              std::uint64_t seed, int threads = 0);

enum class LemmaId { L6, L7, L8, L9 };

std::string to_string(LemmaId id);
LemmaId parse_lemma(const std::string& text);

struct LemmaReport {
  LemmaId which = LemmaId::L6;
  int b = 0;
  int j = 0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_gap = 0.0;  // largest lhs - rhs seen
  std::vector<double> counterexample_p;
  std::vector<double> counterexample_q;
  bool passed() const { return violations == 0; }
};

struct LemmaOptions {
  double slack = 1e-12;
  bool boundary = false;  // pin the hypothesis at its boundary (L8: p1 = 1-eps, L9: delta = eps)
  double fault = 0.0;     // added to every Psi evaluation on the larger side, for fault-injection runs
};

/// Samples hypothesis-satisfying instances of the chosen inequality and
/// counts violations beyond `slack`.
///   L6: p1 <= p2 and q1 <= q2; swapping q1, q2 does not decrease Psi.
///   L7: q1 <= ... <= q_{j-1}, p supported on the first j-1 coordinates with
///       entries <= 1 - a; Psi(p; q) <= Psi(1-a, a, 0, ...; q).
///   L8: eps <= 1/(j+1), p1 >= 1-eps, q ascending;
///       Psi(p; q) <= Psi(p; 0, q1+q2, q3, ...).
///   L9: eps < 1/2, q1 >= 1-eps, 0 < d <= eps;
///       Psi(1-eps+d, p2, ...; q) < Psi(1-eps, p2+d, ...; q).
LemmaReport check_lemma_inequalities(LemmaId which, int b, int j, std::size_t count, std::uint64_t seed,
                                     const LemmaOptions& options = {});

struct OracleReport {
  int b = 0;
  int j = 0;
  std::size_t samples = 0;
  double max_abs_diff = 0.0;
  bool passed = false;
};

/// psi_fast against psi_naive on random pairs; passes at 1e-12.
OracleReport check_psi_oracle(int b, int j, std::size_t count, std::uint64_t seed, double fault = 0.0);

}  // namespace hashbound
