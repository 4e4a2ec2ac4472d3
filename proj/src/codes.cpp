#include "hashbound/codes.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hashbound {

namespace {

bool separated(const std::vector<const std::vector<int>*>& group, int n, int b) {
  std::vector<char> seen(static_cast<std::size_t>(b) + 1);
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    bool distinct = true;
    for (const auto* w : group) {
      const int s = (*w)[static_cast<std::size_t>(c)];
      if (seen[static_cast<std::size_t>(s)]) {
        distinct = false;
        break;
      }
      seen[static_cast<std::size_t>(s)] = 1;
    }
    if (distinct) return true;
  }
  return false;
}

// Calls fn on each r-subset of [0, n) given as sorted indices; stops when fn returns false.
template <class Fn>
bool for_each_subset(std::size_t n, std::size_t r, Fn&& fn) {
  if (r > n) return true;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return false;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t t = i; t < r; ++t) idx[t] = idx[t - 1] + 1;
  }
}

std::vector<int> word_of(std::uint64_t index, int b, int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int c = n - 1; c >= 0; --c) {
    w[static_cast<std::size_t>(c)] = static_cast<int>(index % static_cast<std::uint64_t>(b)) + 1;
    index /= static_cast<std::uint64_t>(b);
  }
  return w;
}

class Search {
 public:
  Search(int b, int k, int n, double budget, std::optional<int> cap)
      : b_(b), k_(k), n_(n), cap_(cap), deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(budget))) {}

  void run(std::vector<std::vector<int>> all) {
    all_ = std::move(all);
    std::vector<std::size_t> cands;
    for (std::size_t i = 1; i < all_.size(); ++i) cands.push_back(i);
    chosen_.push_back(0);
    best_ = chosen_;
    extend(cands);
  }

  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  bool capped_ = false;

 private:
  // Can `c` join the chosen words, given they already pass and `last` is the newest?
  bool compatible(std::size_t c, std::size_t last) const {
    if (k_ <= 2) return true;
    const std::size_t others = chosen_.size() - 1;  // chosen words other than `last`
    std::vector<const std::vector<int>*> group(static_cast<std::size_t>(k_));
    return for_each_subset(others, static_cast<std::size_t>(k_ - 2), [&](const std::vector<std::size_t>& idx) {
      for (std::size_t t = 0; t < idx.size(); ++t) group[t] = &all_[chosen_[idx[t]]];
      group[idx.size()] = &all_[last];
      group[idx.size() + 1] = &all_[c];
      return separated(group, n_, b_);
    });
  }

  void extend(const std::vector<std::size_t>& cands) {
    ++nodes_;
    if (chosen_.size() > best_.size()) best_ = chosen_;
    if (cap_ && static_cast<int>(best_.size()) >= *cap_) {
      capped_ = true;
      return;
    }
    if ((nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
    if (timed_out_) return;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (chosen_.size() + (cands.size() - i) <= best_.size()) return;
      const std::size_t c = cands[i];
      chosen_.push_back(c);
      std::vector<std::size_t> next;
      next.reserve(cands.size() - i - 1);
      // Words still compatible once c is in (every old subset was checked when they were kept).
      for (std::size_t t = i + 1; t < cands.size(); ++t) {
        if (compatible(cands[t], c)) next.push_back(cands[t]);
      }
      extend(next);
      chosen_.pop_back();
      if (timed_out_ || capped_) return;
    }
  }

  int b_, k_, n_;
  std::optional<int> cap_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<std::vector<int>> all_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

void Code::validate() const {
  if (b < 1 || n < 1) throw std::invalid_argument("Code: b and n must be positive");
  std::set<std::vector<int>> seen;
  for (const auto& w : words) {
    if (static_cast<int>(w.size()) != n) throw std::invalid_argument("Code: word of wrong length");
    for (int s : w) {
      if (s < 1 || s > b) throw std::invalid_argument("Code: symbol " + std::to_string(s) + " out of range 1.." + std::to_string(b));
    }
    if (!seen.insert(w).second) throw std::invalid_argument("Code: repeated word");
  }
}

HashCheck is_bk_hash(const Code& code, int k) {
  code.validate();
  if (k < 2) throw std::invalid_argument("is_bk_hash: k must be at least 2");
  HashCheck result;
  std::vector<const std::vector<int>*> group(static_cast<std::size_t>(k));
  for_each_subset(code.words.size(), static_cast<std::size_t>(k), [&](const std::vector<std::size_t>& idx) {
    for (std::size_t t = 0; t < idx.size(); ++t) group[t] = &code.words[idx[t]];
    if (separated(group, code.n, code.b)) return true;
    result.ok = false;
    result.witness = idx;
    return false;
  });
  return result;
}

CodeSearchResult max_code_exhaustive(int b, int k, int n, double budget_secs, SearchOrder order,
                                     std::optional<int> size_cap) {
  if (b < 2 || k < 2 || k > b || n < 1) throw std::invalid_argument("max_code_exhaustive: need 2 <= k <= b and n >= 1");
  double total = 1.0;
  for (int c = 0; c < n; ++c) total *= b;
  if (total > 1e6) throw std::invalid_argument("max_code_exhaustive: b^n too large for exhaustive search");
  const auto count = static_cast<std::uint64_t>(total);

  std::vector<std::vector<int>> all;
  all.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    all.push_back(word_of(order == SearchOrder::Ascending ? i : count - 1 - i, b, n));
  }
  Search search(b, k, n, budget_secs, size_cap);
  search.run(all);

  CodeSearchResult r;
  r.size = static_cast<int>(search.best_.size());
  r.nodes = search.nodes_;
  r.complete = !search.timed_out_ && !search.capped_;
  r.witness.b = b;
  r.witness.n = n;
  for (std::size_t i : search.best_) r.witness.words.push_back(all[i]);
  return r;
}

void write_code(std::ostream& out, const Code& code) {
  for (const auto& w : code.words) {
    for (std::size_t c = 0; c < w.size(); ++c) out << (c ? " " : "") << w[c];
    out << '\n';
  }
}

Code read_code(std::istream& in, int b) {
  Code code;
  code.b = b;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> w;
    int s;
    while (ls >> s) w.push_back(s);
    if (w.empty()) continue;
    if (code.n == 0) code.n = static_cast<int>(w.size());
    code.words.push_back(std::move(w));
  }
  code.validate();
  return code;
}

}  // namespace hashbound
