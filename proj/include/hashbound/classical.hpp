#pragma once

#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace hashbound {

/// Alphabet size b, hash order k and an optional partition order j.
struct ProblemParams {
  int b;
  int k;
  std::optional<int> j;

  ProblemParams(int b, int k, std::optional<int> j = std::nullopt);
  int require_j() const;
};

struct BoundWithJ {
  double value;
  int j;
};

double fredman_komlos(const ProblemParams& params);
BoundWithJ korner_marton(const ProblemParams& params);

/// The single term of the Korner-Marton minimum at a given j (j = 0 allowed,
/// which is the form quoted in older comparison tables).
double korner_marton_term(int b, int k, int j);

double dvj_bound(const ProblemParams& params);

/// Rate bound from an upper bound Mj on the quadratic form. Increasing in Mj.
double rate_from_Mj(const ProblemParams& params, double Mj);

/// Minimum over j of rate_from_Mj with Mj set to the uniform-point value.
/// This is a conjectured bound, not a theorem.
BoundWithJ conjectured_bound(const ProblemParams& params);

struct PlotkinResult {
  double intersection;     // from the two primitive inequalities, via the fixed-point solver
  double closed_form;      // (b-1)(b-2) log b / ((b-1)(b-2) + b^2 log b)
  double printed_formula;  // same with numerator b(b-1), kept for comparison only
};

PlotkinResult plotkin_combined_k4(int b);

/// Plotkin relative-distance bound for b-ary codes of rate R: (1 - R/log2 b)(b-1)/b.
double plotkin_delta(int b, double rate);

/// sup{R in [0, log2 b] : R <= c F(R)} with c = (b-2)^{(k-3)}/b^{k-3}.
/// Throws if F increases anywhere on a probe grid.
double balanced_fixed_point(int b, int k, const std::function<double(double)>& F);
double balanced_fixed_point_constant(int b, int k);

/// Piecewise-linear F from "R delta" lines. R strictly increasing, delta nonincreasing.
class TabulatedF {
 public:
  static TabulatedF parse(std::istream& in);
  static TabulatedF load(const std::string& path);
  TabulatedF(std::vector<double> r, std::vector<double> delta);

  double operator()(double rate) const;
  double max_rate() const { return r_.back(); }

 private:
  std::vector<double> r_;
  std::vector<double> delta_;
};

}  // namespace hashbound
