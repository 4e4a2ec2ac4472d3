#include "hashbound/configuration.hpp"

#include <sstream>
#include <stdexcept>

namespace hashbound {

void PartitionSpec::validate(int b, int j) const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("PartitionSpec: epsilon must be positive");
  if (kind == PartitionKind::MaxValue) {
    if (epsilon > 1.0 / (j + 1) + 1e-15) {
      throw std::invalid_argument("PartitionSpec: max-value partition needs eps <= 1/(j+1) = " +
                                  std::to_string(1.0 / (j + 1)));
    }
  } else if (epsilon >= 1.0 / b) {
    throw std::invalid_argument("PartitionSpec: min-value partition needs eps < 1/b = " + std::to_string(1.0 / b));
  }
}

std::string to_string(PartitionKind kind) { return kind == PartitionKind::MaxValue ? "max" : "min"; }

std::string to_string(MSelector which) {
  switch (which) {
    case MSelector::M1: return "M1";
    case MSelector::M2: return "M2";
    case MSelector::M3: return "M3";
    case MSelector::M4: return "M4";
  }
  return "?";
}

PartitionKind parse_partition_kind(const std::string& text) {
  if (text == "max") return PartitionKind::MaxValue;
  if (text == "min") return PartitionKind::MinValue;
  throw std::invalid_argument("unknown partition kind '" + text + "' (expected max or min)");
}

MSelector parse_selector(const std::string& text) {
  for (auto s : kAllSelectors) {
    if (to_string(s) == text) return s;
  }
  throw std::invalid_argument("unknown selector '" + text + "' (expected M1..M4)");
}

int Configuration::b() const {
  int total = 0;
  for (const auto& s : segments) total += s.mult;
  return total;
}

int Configuration::structural_zeros(bool p_side) const {
  int z = 0;
  for (const auto& s : segments) {
    const SlotValue& v = p_side ? s.p : s.q;
    if (!v.is_var() && v.constant == 0.0) z += s.mult;
  }
  return z;
}

int Configuration::structural_zeros_excluding_heavy(bool p_side, double heavy) const {
  int z = 0;
  for (const auto& s : segments) {
    const SlotValue& v = p_side ? s.p : s.q;
    const SlotValue& other = p_side ? s.q : s.p;
    if (v.is_var() || v.constant != 0.0) continue;
    const auto& other_vars = p_side ? q_vars : p_vars;
    const double other_lo = other.is_var() ? other_vars[static_cast<std::size_t>(other.var)].lo : other.constant;
    if (other_lo >= heavy) continue;
    z += s.mult;
  }
  return z;
}

std::string Configuration::describe() const {
  std::ostringstream os;
  os << family_tag << " l1=" << l1 << " l2=" << l2;
  for (double c : choices) os << " choice=" << c;
  os << " [";
  auto slot = [&](const SlotValue& v, const std::vector<VarBox>& vars) {
    if (v.is_var()) {
      os << vars[static_cast<std::size_t>(v.var)].name;
    } else {
      os << v.constant;
    }
  };
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) os << ", ";
    os << segments[i].mult << "x(";
    slot(segments[i].p, p_vars);
    os << ";";
    slot(segments[i].q, q_vars);
    os << ")";
  }
  os << "]";
  return os.str();
}

std::vector<double> expand(const Configuration& config, const std::vector<double>& segment_values) {
  if (segment_values.size() != config.segments.size()) {
    throw std::invalid_argument("expand: expected one value per segment");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(config.b()));
  for (std::size_t s = 0; s < config.segments.size(); ++s) {
    out.insert(out.end(), static_cast<std::size_t>(config.segments[s].mult), segment_values[s]);
  }
  return out;
}

}  // namespace hashbound
