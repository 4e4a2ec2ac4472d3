#pragma once

#include <array>
#include <string>
#include <vector>

namespace hashbound {

enum class PartitionKind { MaxValue, MinValue };

/// Which partition and its threshold epsilon.
///
/// MaxValue splits the simplex by whether some coordinate exceeds 1 - eps,
/// MinValue by whether some coordinate is below eps.
struct PartitionSpec {
  PartitionKind kind;
  double epsilon;

  /// Throws unless 0 < eps <= 1/(j+1) (MaxValue) or 0 < eps < 1/b (MinValue).
  void validate(int b, int j) const;
  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;
};

/// The four subdomain maxima of one partition.
enum class MSelector { M1, M2, M3, M4 };

inline constexpr std::array<MSelector, 4> kAllSelectors{MSelector::M1, MSelector::M2, MSelector::M3, MSelector::M4};

std::string to_string(PartitionKind kind);
std::string to_string(MSelector which);
PartitionKind parse_partition_kind(const std::string& text);
MSelector parse_selector(const std::string& text);

/// Value of one block in p or q: a constant or a free variable of that side.
struct SlotValue {
  int var = -1;
  double constant = 0.0;

  static SlotValue of(double c) { return SlotValue{-1, c}; }
  static SlotValue of_var(int v) { return SlotValue{v, 0.0}; }
  bool is_var() const { return var >= 0; }
};

/// `mult` coordinates that share the value p in p and the value q in q.
struct Segment {
  int mult;
  SlotValue p;
  SlotValue q;
};

struct VarBox {
  std::string name;
  double lo;
  double hi;
};

/// A block-structured family of (p, q) pairs.
///
/// Each side has its own variables with boxes; both sides are constrained
/// to sum to 1. Segment multiplicities sum to b.
struct Configuration {
  std::string family_tag;
  int l1 = 0;
  int l2 = 0;
  std::vector<double> choices;  // discrete endpoint picks, in family order
  std::vector<Segment> segments;
  std::vector<VarBox> p_vars;
  std::vector<VarBox> q_vars;

  int b() const;

  /// Number of coordinates whose value on that side is the constant 0.
  int structural_zeros(bool p_side) const;

  /// As structural_zeros, but not counting zeros that sit opposite a
  /// coordinate that is at least `heavy` on the other side (a constant, or a
  /// variable whose box starts there).
  int structural_zeros_excluding_heavy(bool p_side, double heavy) const;

  std::string describe() const;
};

/// Expand segment values into dense length-b vectors.
std::vector<double> expand(const Configuration& config, const std::vector<double>& segment_values);

}  // namespace hashbound
