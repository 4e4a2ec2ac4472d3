#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hashbound/configuration.hpp"
#include "hashbound/psi.hpp"

namespace hashbound {

struct MaximizeOptions {
  int grid = 400;              // points per free variable, endpoints included
  bool refine = true;          // pattern search from the best grid points
  bool certify = false;        // branch-and-bound upper bound per configuration
  double certify_tol = 1e-7;   // absolute gap accepted by the branch-and-bound
  std::size_t certify_max_cells = 200000;
  bool zero_restriction = true;
  int threads = 0;             // 0 = default_thread_count()
};

/// Best point found on one configuration.
struct ConfigMax {
  double value = -1.0;
  double grid_value = -1.0;
  std::vector<double> p;  // dense, length b
  std::vector<double> q;
  double certified_upper = -1.0;  // only when certification ran
  bool feasible = false;
};

/// Result of one subdomain maximum.
struct SubdomainMax {
  MSelector which = MSelector::M1;
  double value = 0.0;
  Configuration argmax_config;
  ConfigMax argmax;
  double certified_excess = 0.0;
  bool upper_bound_only = false;  // computed over a relaxed domain
  std::size_t candidates = 0;
};

/// All configuration instances that can hold the requested maximum.
std::vector<Configuration> enumerate_candidates(const PartitionSpec& spec, MSelector which, int b, int j,
                                                bool zero_restriction = true);

/// Configurations that hold the unconstrained maximum of Psi_j.
std::vector<Configuration> global_max_candidates(int b, int j, bool zero_restriction = true);

/// Whether `zeros` zero coordinates are allowed given the family's limit.
bool zero_count_allowed(int zeros, int limit, int b, int j);

ConfigMax maximize_config(const Configuration& config, const PsiParams& params, const MaximizeOptions& options = {});

/// First-order Lipschitz slack for a grid of step h in unit-cube coordinates:
/// L h sqrt(d) / 2, with L a coarse bound on the gradient norm.
double certify_excess(const Configuration& config, const PsiParams& params, double grid_step);

SubdomainMax compute_Mi(const PartitionSpec& spec, MSelector which, int b, int j, const MaximizeOptions& options = {});

/// Maximum of Psi_j over all pairs of distributions.
SubdomainMax global_max(int b, int j, const MaximizeOptions& options = {});

/// True for selectors whose value is an upper bound over a relaxed domain.
bool selector_is_relaxed(PartitionKind kind, MSelector which);

}  // namespace hashbound
