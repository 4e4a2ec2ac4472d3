#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hashbound/configuration.hpp"

namespace hashbound {

/// Published parameter choice for one (b,k): order j, partition and threshold.
struct PaperPreset {
  int b;
  int k;
  int j;
  PartitionSpec spec;
  std::string eps_text;  // threshold as published, e.g. "9/100"
};

const std::vector<PaperPreset>& paper_presets();
std::optional<PaperPreset> find_preset(int b, int k);

/// Pairs whose published bound comes from the uniform shortcut.
struct ShortcutEntry {
  int b;
  int k;
  double printed;
};
const std::vector<ShortcutEntry>& shortcut_entries();
bool is_shortcut_pair(int b, int k);

/// Literature columns, copied from published tables; never computed here.
struct LiteratureRow {
  int b;
  int k;
  double arikan;
  double venkat;
  double korner_marton;
};

/// Rows of the main comparison table: published improved bound plus
/// literature columns.
struct MainTableRow {
  int b;
  int k;
  double printed;  // published bound
  bool shortcut;   // from the uniform shortcut rather than a partition
  LiteratureRow literature;
};
const std::vector<MainTableRow>& main_table_rows();

/// k = 4 and large-b comparison rows. Parenthesized j for the literature
/// columns where published; costa_dalai absent where not published.
struct DvjTableRow {
  int b;
  int k;
  double printed_dvj;
  std::optional<double> costa_dalai;
  double arikan;
  std::optional<int> arikan_j;
  double venkat;
  std::optional<int> venkat_j;
  double korner_marton;
  int korner_marton_j;
};
const std::vector<DvjTableRow>& dvj_table_rows();

/// b = k and near-diagonal comparison rows. The KM column is published with
/// `km_sig` significant digits.
struct DiagonalTableRow {
  int b;
  int k;
  double venkat;
  double costa_dalai;
  double arikan;
  double korner_marton;
  int km_sig;
};
const std::vector<DiagonalTableRow>& diagonal_table_rows();

/// Published M for the presets, 7 decimals; exact for (6,6).
struct PublishedM {
  int b;
  int k;
  double M;
};
const std::vector<PublishedM>& published_m_values();

/// Published subdomain maxima. sig[i] == 0 means printed with 6 decimals,
/// otherwise the entry was printed in scientific form with sig[i]
/// significant digits.
struct PublishedMi {
  int b;
  int k;
  PartitionKind kind;
  std::array<double, 4> values;
  std::array<int, 4> sig;
};
const std::vector<PublishedMi>& published_mi_values();

}  // namespace hashbound
