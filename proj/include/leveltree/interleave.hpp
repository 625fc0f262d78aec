#pragma once

// The interleaving words underlying ordinal representations: tree-domain
// entries alternated with abstract labels standing for ordinal coordinates.
// Even-level words carry a label before every entry, odd-level words skip
// the leading one.

#include <string>
#include <variant>

#include "trees.hpp"

namespace leveltree {

using WordLabel = std::string;

struct InterleavedWord {
  using Item = std::variant<WordLabel, Node>;
  std::vector<Item> items;

  friend bool operator==(const InterleavedWord&, const InterleavedWord&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const InterleavedWord& w) {
  os << '(';
  for (std::size_t i = 0; i < w.items.size(); ++i) {
    if (i) os << ' ';
    if (std::holds_alternative<WordLabel>(w.items[i]))
      os << std::get<WordLabel>(w.items[i]);
    else
      os << std::get<Node>(w.items[i]);
  }
  return os << ')';
}

// labels are required on every proper prefix of q that contributes a slot
inline std::optional<InterleavedWord> oplus(const LevelTree& t, const Path& q,
                                            const std::map<Path, WordLabel, PathBK>& labels) {
  InterleavedWord w;
  bool ev = t.even();
  for (int i = 0; i < q.size(); ++i) {
    if (ev || i >= 1) {
      auto it = labels.find(q.prefix(i));
      if (it == labels.end()) return std::nullopt;  // missing label
      w.items.push_back(it->second);
    }
    w.items.push_back(q.e[static_cast<std::size_t>(i)]);
  }
  if (ev)
    cover("oplus.even");
  else
    cover("oplus.odd");
  return w;
}

// BK comparison with label positions decided by the supplied strict order.
// Returns nothing when an unranked label or a kind mismatch shows up.
inline std::optional<int> word_compare(const InterleavedWord& a, const InterleavedWord& b,
                                       const std::map<WordLabel, int>& rank) {
  std::size_t n = std::min(a.items.size(), b.items.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.items[i];
    const auto& y = b.items[i];
    if (x.index() != y.index()) return std::nullopt;
    if (std::holds_alternative<WordLabel>(x)) {
      auto rx = rank.find(std::get<WordLabel>(x));
      auto ry = rank.find(std::get<WordLabel>(y));
      if (rx == rank.end() || ry == rank.end()) return std::nullopt;
      if (rx->second != ry->second) return rx->second < ry->second ? -1 : 1;
    } else {
      int c = bk_compare(std::get<Node>(x), std::get<Node>(y));
      if (c != 0) return c;
    }
  }
  if (a.items.size() == b.items.size()) return 0;
  return a.items.size() > b.items.size() ? -1 : 1;
}

}  // namespace leveltree
