#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hashbound {

/// Words of length n over the symbols 1..b.
struct Code {
  int b = 0;
  int n = 0;
  std::vector<std::vector<int>> words;

  /// Throws on symbols out of range, wrong lengths or repeated words.
  void validate() const;
};

struct HashCheck {
  bool ok = true;
  std::vector<std::size_t> witness;  // indices of k words with no separating coordinate
};

/// True when every k words have a coordinate where their symbols are
/// pairwise distinct. Vacuously true with fewer than k words.
HashCheck is_bk_hash(const Code& code, int k);

enum class SearchOrder { Ascending, Descending };

struct CodeSearchResult {
  int size = 0;
  Code witness;
  bool complete = false;  // false: time budget ran out, size is a lower bound
  std::uint64_t nodes = 0;
};

/// Largest (b,k)-hash code of length n by backtracking. The first word is
/// fixed (all smallest or all largest symbols, following `order`), which is
/// free since symbols can be permuted per coordinate. Stops early at
/// `size_cap` words when given.
CodeSearchResult max_code_exhaustive(int b, int k, int n, double budget_secs = 60.0,
                                     SearchOrder order = SearchOrder::Ascending,
                                     std::optional<int> size_cap = std::nullopt);

/// One codeword per line, symbols separated by spaces.
void write_code(std::ostream& out, const Code& code);
Code read_code(std::istream& in, int b);

}  // namespace hashbound
