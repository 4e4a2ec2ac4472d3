#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hashbound/configuration.hpp"
#include "hashbound/partition.hpp"

namespace hashbound {

/// Values (or upper bounds) of the four subdomain maxima of one partition.
struct MiTuple {
  double m1;
  double m2;
  double m3;
  double m4;
  int b;

  void validate() const;
  bool closed_form_applies() const { return m4 > m3; }
  friend bool operator==(const MiTuple&, const MiTuple&) = default;
};

/// eta_0 on the balanced cell and eta_rest on each of the b others. On the
/// fallback path the remaining mass sits on a single cell instead, and
/// eta_rest holds that mass.
struct EtaWeights {
  double eta0;
  double eta_rest;
};

/// eta0^2 M1 + 2 eta0 sum eta_i M2 + sum eta_i^2 M3 + 2 sum_{i<h} eta_i eta_h M4.
double f_eta(const MiTuple& mi, const std::vector<double>& eta);

struct CombineResult {
  double M;
  EtaWeights eta;
  bool fallback;  // m4 <= m3: maximized directly instead of by the closed form
};

CombineResult combine(const MiTuple& mi);

struct ClassicalColumns {
  double fredman_komlos;
  double korner_marton;
  int korner_marton_j;
  double dvj;
  double conjectured;
  int conjectured_j;
  friend bool operator==(const ClassicalColumns&, const ClassicalColumns&) = default;
};

ClassicalColumns classical_columns(int b, int k);

/// Everything that went into one bound.
struct BoundReport {
  int b = 0;
  int k = 0;
  int j = 0;
  std::optional<PartitionSpec> partition;  // absent when only the uniform shortcut ran
  std::optional<MiTuple> mi;
  std::vector<std::string> mi_configs;   // argmax configuration per selector
  std::vector<bool> mi_upper_bound;      // flagged relaxed selectors
  double mi_certified_excess = 0.0;
  std::optional<double> partition_M;
  std::optional<double> partition_rate;
  std::optional<double> eta0;
  bool combiner_fallback = false;
  double global_max = 0.0;        // max of Psi_j over all pairs
  bool global_checked = false;    // false: global max taken to be the uniform value
  double uniform_value = 0.0;     // Psi_j at the uniform pair
  bool uniform_is_global = false; // global max equals the uniform value
  double shortcut_rate = 0.0;     // rate_from_Mj at the global max
  double M = 0.0;                 // the M behind the final bound
  double rate = 0.0;              // final bound
  std::string path;               // "partition" or "uniform-shortcut" or "global-max"
  ClassicalColumns classical{};
  bool certified = false;
  double seconds = 0.0;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

struct FullBoundOptions {
  MaximizeOptions maximize;
  bool run_partition = true;
  bool run_global = true;  // when false, the uniform closed form is trusted as the global max
  std::optional<SubdomainMax> global;  // reuse a global maximum computed earlier for the same (b,j)
};

BoundReport full_bound(int b, int k, int j, const std::optional<PartitionSpec>& spec, const FullBoundOptions& options = {});

}  // namespace hashbound
