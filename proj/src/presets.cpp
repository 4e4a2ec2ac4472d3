#include "hashbound/presets.hpp"

#include <algorithm>
#include <cmath>

namespace hashbound {

const std::vector<PaperPreset>& paper_presets() {
  using K = PartitionKind;
  static const std::vector<PaperPreset> presets{
      {5, 5, 3, {K::MinValue, (4.0 + std::sqrt(5.0)) / 44.0}, "(4+sqrt(5))/44"},
      {6, 5, 3, {K::MinValue, 1.0 / 10.0}, "1/10"},
      {6, 6, 4, {K::MinValue, 1.0 / 20.0}, "1/20"},
      {7, 7, 5, {K::MaxValue, 9.0 / 100.0}, "9/100"},
      {8, 8, 6, {K::MaxValue, 3.0 / 25.0}, "3/25"},
      {9, 8, 6, {K::MaxValue, 1.0 / 10.0}, "1/10"},
      {10, 9, 7, {K::MaxValue, 1.0 / 15.0}, "1/15"},
      {11, 10, 8, {K::MaxValue, 1.0 / 11.0}, "1/11"},
      {12, 10, 8, {K::MaxValue, 1.0 / 20.0}, "1/20"},
      {13, 11, 9, {K::MaxValue, 1.0 / 25.0}, "1/25"},
      {14, 12, 10, {K::MaxValue, 1.0 / 13.0}, "1/13"},
      {15, 13, 11, {K::MaxValue, 1.0 / 12.0}, "1/12"},
  };
  return presets;
}

std::optional<PaperPreset> find_preset(int b, int k) {
  for (const auto& p : paper_presets()) {
    if (p.b == b && p.k == k) return p;
  }
  return std::nullopt;
}

const std::vector<MainTableRow>& main_table_rows() {
  // b, k, published bound, shortcut, {Arikan, venkat, KM}
  static const std::vector<MainTableRow> rows = [] {
    struct Raw {
      int b, k;
      double printed;
      bool shortcut;
      double arikan, venkat, km;
    };
    const Raw raw[] = {
        {5, 5, 0.16894, false, 0.23560, 0.19079, 0.19200},   {6, 5, 0.34512, false, 0.44149, 0.43207, 0.44027},
        {6, 6, 0.08475, false, 0.15484, 0.09228, 0.09260},   {7, 6, 0.19897, true, 0.30554, 0.23524, 0.23765},
        {8, 6, 0.31799, true, 0.44888, 0.40330, 0.41016},    {9, 6, 0.43237, true, 0.58303, 0.58486, 0.59455},
        {10, 6, 0.53909, true, 0.73304, 0.76977, 0.78170},   {11, 6, 0.63766, true, 0.87038, 0.95285, 0.96640},
        {12, 6, 0.72848, true, 0.99588, 1.13118, 1.14584},   {13, 6, 0.81227, true, 1.11084, 1.30322, 1.31855},
        {14, 6, 0.88978, true, 1.21657, 1.46822, 1.48388},   {7, 7, 0.04090, false, 0.09747, 0.04279, 0.04284},
        {8, 7, 0.10865, true, 0.20340, 0.12134, 0.12189},    {9, 7, 0.19054, true, 0.31204, 0.22547, 0.22761},
        {10, 7, 0.27741, true, 0.41982, 0.34615, 0.35108},   {11, 7, 0.36424, true, 0.52472, 0.47856, 0.48538},
        {12, 7, 0.44850, true, 0.65160, 0.61698, 0.62549},   {13, 7, 0.52902, true, 0.77148, 0.75796, 0.76792},
        {14, 7, 0.60538, true, 0.88384, 0.89915, 0.91027},   {8, 8, 0.01889, false, 0.05769, 0.01922, 0.01923},
        {9, 8, 0.05616, false, 0.12874, 0.06001, 0.06013},   {10, 8, 0.10791, true, 0.20754, 0.12048, 0.12096},
        {11, 8, 0.16878, true, 0.29023, 0.19680, 0.19818},   {12, 8, 0.23451, true, 0.37434, 0.28470, 0.28797},
        {13, 8, 0.30214, true, 0.45827, 0.38245, 0.38694},   {14, 8, 0.36974, true, 0.56612, 0.48658, 0.49227},
        {10, 9, 0.02773, false, 0.07668, 0.02874, 0.02876},  {11, 9, 0.05796, true, 0.13098, 0.06197, 0.06208},
        {12, 9, 0.09730, true, 0.19157, 0.10746, 0.10778},   {13, 9, 0.14332, true, 0.25611, 0.16368, 0.16444},
        {14, 9, 0.19382, true, 0.32294, 0.22865, 0.23033},   {11, 10, 0.01321, false, 0.04289, 0.01342, 0.01343},
        {12, 10, 0.02978, false, 0.07806, 0.03093, 0.03095}, {13, 10, 0.05342, true, 0.12009, 0.05674, 0.05681},
        {14, 10, 0.08332, true, 0.16726, 0.09071, 0.09090},  {13, 11, 0.01476, false, 0.04400, 0.01506, 0.01506},
        {14, 11, 0.02815, true, 0.07141, 0.02915, 0.02916},  {14, 12, 0.00712, false, 0.02361, 0.00718, 0.00718},
        {15, 13, 0.00335, false, 0.01218, 0.00336, 0.00336},
    };
    std::vector<MainTableRow> out;
    for (const auto& r : raw) out.push_back({r.b, r.k, r.printed, r.shortcut, {r.b, r.k, r.arikan, r.venkat, r.km}});
    return out;
  }();
  return rows;
}

const std::vector<ShortcutEntry>& shortcut_entries() {
  static const std::vector<ShortcutEntry> entries = [] {
    std::vector<ShortcutEntry> out;
    for (const auto& r : main_table_rows()) {
      if (r.shortcut) out.push_back({r.b, r.k, r.printed});
    }
    return out;
  }();
  return entries;
}

bool is_shortcut_pair(int b, int k) {
  const auto& e = shortcut_entries();
  return std::any_of(e.begin(), e.end(), [&](const ShortcutEntry& s) { return s.b == b && s.k == k; });
}

const std::vector<DvjTableRow>& dvj_table_rows() {
  static const std::vector<DvjTableRow> rows{
      {5, 4, 0.57303, 0.66126, 0.61142, std::nullopt, 0.74834, std::nullopt, 0.73697, 0},
      {6, 4, 0.77709, 0.87963, 0.83904, std::nullopt, 1.09604, std::nullopt, 1.00000, 0},
      {7, 4, 0.94372, 1.03711, 1.02931, std::nullopt, 1.40593, std::nullopt, 1.22239, 0},
      {100, 6, 2.81342, std::nullopt, 3.61848, 2, 4.87959, 2, 4.32193, 0},
      {100, 7, 2.67473, std::nullopt, 3.41158, 2, 4.47696, 2, 4.05889, 0},
  };
  return rows;
}

const std::vector<DiagonalTableRow>& diagonal_table_rows() {
  static const std::vector<DiagonalTableRow> rows{
      {9, 9, 8.4288e-3, 0.00946, 0.03182, 8.4300e-3, 5},
      {10, 10, 3.6287e-3, 0.00419, 0.01642, 3.6288e-3, 5},
      {11, 11, 1.53895e-3, 0.00181, 0.00803, 1.53897e-3, 6},
      {12, 11, 6.13036e-3, 0.00664, 0.02266, 6.13075e-3, 6},
      {12, 12, 6.44678e-4, 0.00077, 0.00377, 6.44679e-4, 6},
      {13, 12, 2.75350e-3, 0.00305, 0.01143, 2.75355e-3, 6},
      {13, 13, 2.672760e-4, 0.00033, 0.00172, 2.672761e-4, 7},
      {14, 13, 1.218595e-3, 0.00138, 0.00556, 1.218599e-3, 7},
  };
  return rows;
}

const std::vector<PublishedM>& published_m_values() {
  static const std::vector<PublishedM> values{
      {5, 5, 0.3873676},  {6, 5, 0.5567010},  {6, 6, 5.0 / 27.0},  {7, 7, 0.0861594},
      {8, 8, 0.0388599},  {9, 8, 0.0758830},  {10, 9, 0.0363565}, {11, 10, 0.0170049},
      {12, 10, 0.0309448}, {13, 11, 0.0150674}, {14, 12, 0.0071917}, {15, 13, 0.0033733},
  };
  return values;
}

const std::vector<PublishedMi>& published_mi_values() {
  using K = PartitionKind;
  static const std::vector<PublishedMi> values{
      {7, 7, K::MaxValue, {0.085679, 0.092593, 0.000006, 0.000107}, {0, 0, 0, 0}},
      {8, 8, K::MaxValue, {0.038453, 0.042840, 0.000002, 0.000022}, {0, 0, 0, 0}},
      {9, 8, K::MaxValue, {0.075870, 0.076905, 0.000001, 0.000015}, {0, 0, 0, 0}},
      {10, 9, K::MaxValue, {0.036289, 0.037935, 3.4e-9, 8.5e-8}, {0, 0, 2, 2}},
      {11, 10, K::MaxValue, {0.016928, 0.018144, 1.4e-9, 2.7e-8}, {0, 0, 2, 2}},
      {12, 10, K::MaxValue, {0.030945, 0.031036, 2.1e-11, 7.0e-9}, {0, 0, 2, 2}},
      {13, 11, K::MaxValue, {0.015057, 0.015473, 7.8e-14, 3.5e-12}, {0, 0, 2, 2}},
      {14, 12, K::MaxValue, {0.007176, 0.007529, 1.2e-12, 2.6e-11}, {0, 0, 2, 2}},
      {15, 13, K::MaxValue, {0.003360, 0.003588, 1.1e-13, 2.3e-12}, {0, 0, 2, 2}},
      {5, 5, K::MinValue, {0.384033, 0.389226, 0.374759, 0.389226}, {0, 0, 0, 0}},
      {6, 5, K::MinValue, {0.555625, 0.558467, 0.535106, 0.558467}, {0, 0, 0, 0}},
      {6, 6, K::MinValue, {0.185185, 0.178857, 0.140664, 0.192000}, {0, 0, 0, 0}},
  };
  return values;
}

}  // namespace hashbound
