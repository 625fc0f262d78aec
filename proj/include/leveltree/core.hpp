#pragma once

// Nodes, paths and the Brouwer-Kleene order. The two sequence alphabets of
// the calculus: level-1 tree members are finite integer sequences, domains of
// higher trees are finite sequences of such nodes. The formal entry -1 sits
// below every natural and may appear only once, in final position.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace leveltree {

// ---------------------------------------------------------------------------
// Node: element of omega^{<omega}, or a dom*-style extension ending in -1.

struct Node {
  std::vector<int> e;

  Node() = default;
  Node(std::initializer_list<int> xs) : e(xs) {}
  explicit Node(std::vector<int> xs) : e(std::move(xs)) {}

  bool empty() const { return e.empty(); }
  int size() const { return static_cast<int>(e.size()); }
  int last() const { return e.back(); }

  bool has_minus_marker() const { return !e.empty() && e.back() == -1; }

  // All entries >= 0: a genuine tree member (as opposed to a formal -1 form).
  bool is_concrete() const {
    return std::all_of(e.begin(), e.end(), [](int x) { return x >= 0; });
  }

  // -1 at most once and only in last position; nothing below -1.
  bool well_formed() const {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < -1) return false;
      if (e[i] == -1 && i + 1 != e.size()) return false;
    }
    return true;
  }

  Node parent() const {  // p^- : drop the last entry
    Node r = *this;
    r.e.pop_back();
    return r;
  }

  Node child(int a) const {
    Node r = *this;
    r.e.push_back(a);
    return r;
  }

  Node prefix(int k) const { return Node(std::vector<int>(e.begin(), e.begin() + k)); }

  bool extends(const Node& p) const {  // p is an initial segment of *this
    if (p.e.size() > e.size()) return false;
    return std::equal(p.e.begin(), p.e.end(), e.begin());
  }

  friend bool operator==(const Node&, const Node&) = default;
};

// The formal path-level marker: the node (-1).
inline Node minus_node() { return Node{-1}; }

// <_BK on nodes: a proper extension lies below its prefix, otherwise the
// first differing entry decides (with -1 below every natural).
inline int bk_compare(const Node& s, const Node& t) {
  std::size_t n = std::min(s.e.size(), t.e.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (s.e[i] != t.e[i]) return s.e[i] < t.e[i] ? -1 : 1;
  }
  if (s.e.size() == t.e.size()) return 0;
  return s.e.size() > t.e.size() ? -1 : 1;
}

struct NodeBK {
  bool operator()(const Node& a, const Node& b) const { return bk_compare(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Path: domain element of a level-d tree (d >= 2); a sequence of nodes,
// possibly ending in the formal (-1) entry.

struct Path {
  std::vector<Node> e;

  Path() = default;
  Path(std::initializer_list<Node> xs) : e(xs) {}
  explicit Path(std::vector<Node> xs) : e(std::move(xs)) {}

  bool empty() const { return e.empty(); }
  int size() const { return static_cast<int>(e.size()); }
  const Node& last() const { return e.back(); }

  bool has_minus_marker() const { return !e.empty() && e.back() == minus_node(); }

  bool is_concrete() const {
    return std::all_of(e.begin(), e.end(), [](const Node& n) {
      return !n.empty() && n.is_concrete();
    });
  }

  bool well_formed() const {
    for (std::size_t i = 0; i < e.size(); ++i) {
      const Node& n = e[i];
      if (!n.well_formed() || n.empty()) return false;
      // inner entries must be concrete nodes; the marker may only close a path
      if (!n.is_concrete() && !(n == minus_node() && i + 1 == e.size())) return false;
    }
    return true;
  }

  Path parent() const {  // q^-
    Path r = *this;
    r.e.pop_back();
    return r;
  }

  Path child(const Node& a) const {
    Path r = *this;
    r.e.push_back(a);
    return r;
  }

  Path with_minus() const { return child(minus_node()); }

  Path prefix(int k) const { return Path(std::vector<Node>(e.begin(), e.begin() + k)); }

  bool extends(const Path& p) const {
    if (p.e.size() > e.size()) return false;
    for (std::size_t i = 0; i < p.e.size(); ++i)
      if (!(p.e[i] == e[i])) return false;
    return true;
  }

  friend bool operator==(const Path&, const Path&) = default;
};

inline int bk_compare(const Path& s, const Path& t) {
  std::size_t n = std::min(s.e.size(), t.e.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = bk_compare(s.e[i], t.e[i]);
    if (c != 0) return c;
  }
  if (s.e.size() == t.e.size()) return 0;
  return s.e.size() > t.e.size() ? -1 : 1;
}

struct PathBK {
  bool operator()(const Path& a, const Path& b) const { return bk_compare(a, b) < 0; }
};

// Structural (non-BK) total orders, used for canonical tie-breaking where BK
// is not the natural key.
inline int lex_compare(const Node& a, const Node& b) {
  if (a.e.size() != b.e.size()) return a.e.size() < b.e.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  return 0;
}

inline int lex_compare(const Path& a, const Path& b) {
  if (a.e.size() != b.e.size()) return a.e.size() < b.e.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.e.size(); ++i) {
    int c = lex_compare(a.e[i], b.e[i]);
    if (c != 0) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Printing (debug form; canonical serialization lives in sexpr/serialize).

inline std::ostream& operator<<(std::ostream& os, const Node& n) {
  os << '(';
  for (std::size_t i = 0; i < n.e.size(); ++i) {
    if (i) os << ' ';
    os << n.e[i];
  }
  return os << ')';
}

inline std::ostream& operator<<(std::ostream& os, const Path& p) {
  os << '(';
  for (std::size_t i = 0; i < p.e.size(); ++i) {
    if (i) os << ' ';
    os << p.e[i];
  }
  return os << ')';
}

template <typename T>
std::string show(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// Validation outcome: empty optional means "ok".

struct Violation {
  std::string where;   // offending node / stage / clause site
  std::string clause;  // which defining clause failed

  std::string str() const { return clause + " at " + where; }
};

using Check = std::optional<Violation>;

inline Check ok() { return std::nullopt; }
inline Check fail(std::string where, std::string clause) {
  return Violation{std::move(where), std::move(clause)};
}

// ---------------------------------------------------------------------------
// Clause coverage. Every definitional clause carries an id; the selftest
// fails if a clause is never exercised under the default budget.

class Coverage {
 public:
  static Coverage& instance() {
    static Coverage c;
    return c;
  }

  void hit(const std::string& id) { counts_[id]++; }

  // Clauses announce themselves on first registration so "never hit" is
  // distinguishable from "unknown id".
  void declare(const std::string& id) { counts_.emplace(id, 0); }

  const std::vector<std::pair<std::string, std::uint64_t>> snapshot() const {
    std::vector<std::pair<std::string, std::uint64_t>> v(counts_.begin(), counts_.end());
    std::sort(v.begin(), v.end());
    return v;
  }

  std::vector<std::string> unhit() const {
    std::vector<std::string> v;
    for (auto& [k, n] : counts_)
      if (n == 0) v.push_back(k);
    std::sort(v.begin(), v.end());
    return v;
  }

  void reset() {
    for (auto& [k, n] : counts_) n = 0;
  }

 private:
  std::map<std::string, std::uint64_t> counts_;
};

inline void cover(const std::string& id) { Coverage::instance().hit(id); }

// Compatibility flags for the readings recorded in the documentation: each
// names a definitional ambiguity inherited from the source material.
struct CompatFlags {
  // ucf on generalized descriptions: duplicated guards read as a continuity
  // dichotomy ("dichotomy", default) or literally ("literal", collapses 2,4).
  std::string ucf_guard = "dichotomy";
  // contraction strategy for signature sequences.
  std::string contraction = "dedup-consecutive";
  // hat clause 2 trailing factor: "wchi" (hat of omega^chi) or "chi".
  std::string hat_clause2 = "wchi";

  static CompatFlags& instance() {
    static CompatFlags f;
    return f;
  }
};

}  // namespace leveltree
