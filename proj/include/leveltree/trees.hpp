#pragma once

// Level-1 trees, level-d trees (d >= 2) and level <= m composites, together
// with domain navigation: successor sets, dom*, the minus and plus cones.
//
// Conventions fixed here:
//   * a level-1 tree is a finite set of nonempty integer sequences closed
//     under nonempty initial segments;
//   * even-level trees contain the empty path, odd-level trees (>= 3) do not
//     but their domain plus the empty path is closed;
//   * labels are partial lower-level trees (base composite + attachment),
//     stored explicitly per node and cross-checked by the tower validator.

#include <cassert>
#include <map>
#include <memory>
#include <set>

#include "core.hpp"

namespace leveltree {

class CompositeTree;
using TreePtr = std::shared_ptr<const CompositeTree>;

bool tree_eq(const TreePtr& a, const TreePtr& b);
int tree_cmp(const TreePtr& a, const TreePtr& b);

// ---------------------------------------------------------------------------
// Level-1 trees.

class LevelOneTree {
 public:
  using Set = std::set<Node, NodeBK>;

  LevelOneTree() = default;
  explicit LevelOneTree(Set nodes) : nodes_(std::move(nodes)) {}
  LevelOneTree(std::initializer_list<Node> xs) : nodes_(xs) {}

  const Set& nodes() const { return nodes_; }
  bool empty() const { return nodes_.empty(); }
  int size() const { return static_cast<int>(nodes_.size()); }
  bool contains(const Node& n) const { return nodes_.count(n) > 0; }

  void insert(const Node& n) { nodes_.insert(n); }
  void erase(const Node& n) { nodes_.erase(n); }

  // closure invariant plus entry sanity
  Check validate() const {
    for (const Node& n : nodes_) {
      if (n.empty()) return fail("()", "level1.nonempty");
      if (!n.is_concrete()) return fail(show(n), "level1.entries");
      if (n.size() > 1 && !contains(n.parent()))
        return fail(show(n), "level1.closure");
    }
    return ok();
  }

  // (p) with p not in the tree and all proper nonempty prefixes present
  bool can_insert(const Node& n) const {
    if (n.empty() || !n.is_concrete() || contains(n)) return false;
    return n.size() == 1 || contains(n.parent());
  }

  std::optional<Node> bk_max() const {
    if (nodes_.empty()) return std::nullopt;
    return *nodes_.rbegin();
  }

  std::optional<Node> bk_min() const {
    if (nodes_.empty()) return std::nullopt;
    return *nodes_.begin();
  }

  std::optional<Node> bk_pred(const Node& n) const {  // greatest member < n
    auto it = nodes_.lower_bound(n);
    if (it == nodes_.begin()) return std::nullopt;
    return *std::prev(it);
  }

  std::optional<Node> bk_suc(const Node& n) const {  // least member > n
    auto it = nodes_.upper_bound(n);
    if (it == nodes_.end()) return std::nullopt;
    return *it;
  }

  friend bool operator==(const LevelOneTree&, const LevelOneTree&) = default;

 private:
  Set nodes_;
};

// ---------------------------------------------------------------------------
// Attachments: the (d, p, Z) part of a partial tree. Degree 0 is the formal
// (0, -1, empty) marker; degree 1 attaches a node to the level-1 component;
// degree d >= 2 attaches a path whose tree component is a level <= d-1
// composite.

struct Attachment {
  int deg = 0;
  Node n1;      // deg == 1
  Path pd;      // deg >= 2
  TreePtr tree; // deg >= 2; null otherwise

  static Attachment degenerate() { return Attachment{}; }

  static Attachment at1(Node p) {
    Attachment a;
    a.deg = 1;
    a.n1 = std::move(p);
    return a;
  }

  static Attachment at(int d, Path p, TreePtr Z) {
    Attachment a;
    a.deg = d;
    a.pd = std::move(p);
    a.tree = std::move(Z);
    return a;
  }

  bool degenerate_form() const { return deg == 0; }

  friend bool operator==(const Attachment& a, const Attachment& b) {
    return a.deg == b.deg && a.n1 == b.n1 && a.pd == b.pd && tree_eq(a.tree, b.tree);
  }
};

int attachment_cmp(const Attachment& a, const Attachment& b);

// A partial tree (P, (d, p, Z)): base composite plus a marked extension site.
struct PartialTree {
  TreePtr base;
  Attachment att;

  int degree() const { return att.deg; }

  friend bool operator==(const PartialTree& a, const PartialTree& b) {
    return tree_eq(a.base, b.base) && a.att == b.att;
  }
};

int partial_cmp(const PartialTree& a, const PartialTree& b);

// ---------------------------------------------------------------------------
// Level-d trees, d >= 2.

class LevelTree {
 public:
  using Labels = std::map<Path, PartialTree, PathBK>;

  LevelTree() : level_(2) {}
  explicit LevelTree(int level) : level_(level) { assert(level >= 2); }

  int level() const { return level_; }
  bool even() const { return level_ % 2 == 0; }
  const Labels& labels() const { return labels_; }
  bool empty() const { return labels_.empty(); }
  int size() const { return static_cast<int>(labels_.size()); }

  bool contains(const Path& q) const { return labels_.count(q) > 0; }
  const PartialTree& label(const Path& q) const { return labels_.at(q); }
  const TreePtr& tree_at(const Path& q) const { return labels_.at(q).base; }
  const Attachment& node_at(const Path& q) const { return labels_.at(q).att; }

  void put(const Path& q, PartialTree lab) { labels_[q] = std::move(lab); }
  void erase(const Path& q) { labels_.erase(q); }

  // Q{q} = {a : q^(a) in dom}; defined for q in dom (plus the empty path on
  // the odd side).
  LevelOneTree succ_set(const Path& q) const {
    LevelOneTree t;
    for (auto& [p, lab] : labels_) {
      if (p.size() == q.size() + 1 && p.extends(q)) t.insert(p.last());
    }
    return t;
  }

  // Q{q, P}: successors whose tree component is P
  LevelOneTree succ_with_tree(const Path& q, const TreePtr& P) const {
    LevelOneTree t;
    for (auto& [p, lab] : labels_) {
      if (p.size() == q.size() + 1 && p.extends(q) && tree_eq(lab.base, P))
        t.insert(p.last());
    }
    return t;
  }

  std::vector<Path> dom() const {
    std::vector<Path> v;
    v.reserve(labels_.size());
    for (auto& [p, lab] : labels_) v.push_back(p);
    return v;
  }

  // dom*(Q) = dom(Q) plus one (-1)-extension per node
  std::vector<Path> dom_star() const {
    std::vector<Path> v = dom();
    for (auto& [p, lab] : labels_) v.push_back(p.with_minus());
    std::sort(v.begin(), v.end(), [](const Path& a, const Path& b) {
      return bk_compare(a, b) < 0;
    });
    return v;
  }

  // Q{q,-} = {q^- ^ (-1)} + earlier siblings carrying the same tree as q.
  // Requires q in dom, q nonempty.
  std::vector<Path> minus_cone(const Path& q) const {
    std::vector<Path> v;
    Path par = q.parent();
    v.push_back(par.with_minus());
    const TreePtr& tq = tree_at(q);
    for (auto& [p, lab] : labels_) {
      if (p.size() == q.size() && p.extends(par) && !(p == q) &&
          bk_compare(p.last(), q.last()) < 0 && tree_eq(lab.base, tq))
        v.push_back(p);
    }
    std::sort(v.begin(), v.end(), [](const Path& a, const Path& b) {
      return bk_compare(a, b) < 0;
    });
    return v;
  }

  // Q{q,+,P} = {q^-} + later siblings with tree component P. Defined even
  // when q itself is not in dom; q must be nonempty.
  std::vector<Path> plus_cone(const Path& q, const TreePtr& P) const {
    std::vector<Path> v;
    Path par = q.parent();
    v.push_back(par);
    for (auto& [p, lab] : labels_) {
      if (p.size() == q.size() && p.extends(par) && !(p == q) &&
          bk_compare(p.last(), q.last()) > 0 && tree_eq(lab.base, P))
        v.push_back(p);
    }
    std::sort(v.begin(), v.end(), [](const Path& a, const Path& b) {
      return bk_compare(a, b) < 0;
    });
    return v;
  }

  std::optional<Path> bk_max_dom() const {
    if (labels_.empty()) return std::nullopt;
    return labels_.rbegin()->first;
  }

  // domain-shape part of validation; towers along paths are checked by the
  // tower validator
  Check validate_structure() const;

  friend bool operator==(const LevelTree&, const LevelTree&) = default;

 private:
  int level_;
  Labels labels_;
};

// ---------------------------------------------------------------------------
// Level <= m composites. Component d is a level-d tree; component 1 is a
// level-1 tree.

struct Slot {
  int d = 1;
  Node n1;  // d == 1
  Path pd;  // d >= 2

  static Slot at1(Node n) { return Slot{1, std::move(n), {}}; }
  static Slot at(int d, Path p) { return Slot{d, {}, std::move(p)}; }

  friend bool operator==(const Slot&, const Slot&) = default;
};

inline int slot_cmp(const Slot& a, const Slot& b) {
  if (a.d != b.d) return a.d < b.d ? -1 : 1;
  if (a.d == 1) return bk_compare(a.n1, b.n1);
  return bk_compare(a.pd, b.pd);
}

struct SlotLess {
  bool operator()(const Slot& a, const Slot& b) const { return slot_cmp(a, b) < 0; }
};

inline std::ostream& operator<<(std::ostream& os, const Slot& s) {
  os << '(' << s.d << ' ';
  if (s.d == 1)
    os << s.n1;
  else
    os << s.pd;
  return os << ')';
}

class CompositeTree {
 public:
  CompositeTree() = default;
  explicit CompositeTree(int m) {
    assert(m >= 1);
    for (int d = 2; d <= m; ++d) higher_.push_back(LevelTree(d));
  }

  int level() const { return 1 + static_cast<int>(higher_.size()); }

  const LevelOneTree& c1() const { return c1_; }
  LevelOneTree& c1() { return c1_; }

  const LevelTree& comp(int d) const {
    assert(d >= 2 && d <= level());
    return higher_[d - 2];
  }
  LevelTree& comp(int d) {
    assert(d >= 2 && d <= level());
    return higher_[d - 2];
  }

  // level <= d restriction
  CompositeTree restrict_to(int d) const {
    assert(d >= 1 && d <= level());
    CompositeTree r;
    r.c1_ = c1_;
    r.higher_.assign(higher_.begin(), higher_.begin() + (d - 1));
    return r;
  }

  std::vector<Slot> dom() const {
    std::vector<Slot> v;
    for (const Node& n : c1_.nodes()) v.push_back(Slot::at1(n));
    for (int d = 2; d <= level(); ++d)
      for (const Path& p : comp(d).dom()) v.push_back(Slot::at(d, p));
    return v;
  }

  int dom_size() const {
    int n = c1_.size();
    for (int d = 2; d <= level(); ++d) n += comp(d).size();
    return n;
  }

  bool contains(const Slot& s) const {
    if (s.d == 1) return c1_.contains(s.n1);
    if (s.d > level()) return false;
    return comp(s.d).contains(s.pd);
  }

  // componentwise extension
  bool extends(const CompositeTree& other) const {
    if (other.level() != level()) return false;
    for (const Node& n : other.c1_.nodes())
      if (!c1_.contains(n)) return false;
    for (int d = 2; d <= level(); ++d)
      for (auto& [p, lab] : other.comp(d).labels()) {
        if (!comp(d).contains(p)) return false;
        if (!(comp(d).label(p) == lab)) return false;
      }
    return true;
  }

  friend bool operator==(const CompositeTree&, const CompositeTree&) = default;

 private:
  LevelOneTree c1_;
  std::vector<LevelTree> higher_;
};

inline TreePtr make_tree(CompositeTree t) {
  return std::make_shared<const CompositeTree>(std::move(t));
}

inline bool tree_eq(const TreePtr& a, const TreePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------
// Canonical structural orderings (serialization, dedup, canonical choices).

inline int vec_node_cmp(const std::set<Node, NodeBK>& a, const std::set<Node, NodeBK>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    int c = bk_compare(*ia, *ib);
    if (c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

int composite_cmp(const CompositeTree& a, const CompositeTree& b);

inline int tree_cmp(const TreePtr& a, const TreePtr& b) {
  if (!a && !b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  return composite_cmp(*a, *b);
}

inline int attachment_cmp(const Attachment& a, const Attachment& b) {
  if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
  if (a.deg == 1) return bk_compare(a.n1, b.n1);
  if (a.deg >= 2) {
    int c = bk_compare(a.pd, b.pd);
    if (c != 0) return c;
    return tree_cmp(a.tree, b.tree);
  }
  return 0;
}

inline int partial_cmp(const PartialTree& a, const PartialTree& b) {
  int c = tree_cmp(a.base, b.base);
  if (c != 0) return c;
  return attachment_cmp(a.att, b.att);
}

inline int leveltree_cmp(const LevelTree& a, const LevelTree& b) {
  if (a.level() != b.level()) return a.level() < b.level() ? -1 : 1;
  auto ia = a.labels().begin();
  auto ib = b.labels().begin();
  for (; ia != a.labels().end() && ib != b.labels().end(); ++ia, ++ib) {
    int c = bk_compare(ia->first, ib->first);
    if (c != 0) return c;
    c = partial_cmp(ia->second, ib->second);
    if (c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

inline int composite_cmp(const CompositeTree& a, const CompositeTree& b) {
  if (a.level() != b.level()) return a.level() < b.level() ? -1 : 1;
  int c = vec_node_cmp(a.c1().nodes(), b.c1().nodes());
  if (c != 0) return c;
  for (int d = 2; d <= a.level(); ++d) {
    c = leveltree_cmp(a.comp(d), b.comp(d));
    if (c != 0) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Trivial trees and pinned root labels.

inline CompositeTree trivial_composite(int m);
inline LevelTree minimal_even_tree(int d);

// Root label of every even-level tree: the base is the trivial level <= d-1
// composite (empty top), the attachment marks ((0)) at level d-1 with the
// trivial level <= d-2 tree.
inline PartialTree even_root_label(int d) {
  assert(d >= 2 && d % 2 == 0);
  PartialTree lab;
  lab.base = make_tree(trivial_composite(d - 1));
  if (d == 2) {
    lab.att = Attachment::at1(Node{0});
  } else {
    lab.att = Attachment::at(d - 1, Path{Node{0}}, make_tree(trivial_composite(d - 2)));
  }
  return lab;
}

inline LevelTree minimal_even_tree(int d) {
  LevelTree t(d);
  t.put(Path{}, even_root_label(d));
  return t;
}

// Q0-style trivial composite: even components minimal, odd components empty.
inline CompositeTree trivial_composite(int m) {
  CompositeTree t(m);
  for (int d = 2; d <= m; d += 2) t.comp(d) = minimal_even_tree(d);
  return t;
}

// ---------------------------------------------------------------------------
// Regularity.

inline bool regular_level_one(const LevelOneTree&) {
  // regularity is vacuous at level 1 (reconstructed base; see docs)
  return true;
}

inline bool regular_odd_leveltree(const LevelTree& t) {
  assert(t.level() % 2 == 1);
  return !t.contains(Path{Node{1}});
}

// Regularity of a level <= 2n+1 composite: the top component is regular and,
// when it is empty, the domain is exactly {(2i, ()) : 1 <= i <= n}.
inline bool is_regular(const CompositeTree& t) {
  int m = t.level();
  if (m % 2 == 0) return true;  // only the odd forms carry the notion
  if (m == 1) return regular_level_one(t.c1());
  const LevelTree& top = t.comp(m);
  if (!regular_odd_leveltree(top)) return false;
  if (!top.empty()) return true;
  if (!t.c1().empty()) return false;
  for (int d = 2; d < m; ++d) {
    if (d % 2 == 1) {
      if (!t.comp(d).empty()) return false;
    } else {
      if (!(t.comp(d) == minimal_even_tree(d))) return false;
    }
  }
  return true;
}

inline bool is_regular(const LevelTree& t) {
  if (t.level() % 2 == 0) return true;
  return regular_odd_leveltree(t);
}

// ---------------------------------------------------------------------------
// Domain-shape validation for level-d trees.

inline Check LevelTree::validate_structure() const {
  bool ev = even();
  if (ev) {
    if (!contains(Path{})) return fail("()", "leveltree.even-root");
  } else {
    if (contains(Path{})) return fail("()", "leveltree.odd-no-root");
  }
  for (auto& [q, lab] : labels_) {
    if (!q.well_formed() || !q.is_concrete())
      return fail(show(q), "leveltree.path-form");
    if (q.size() >= 1) {
      Path par = q.parent();
      if (!par.empty() && !contains(par)) return fail(show(q), "leveltree.closure");
    }
  }
  // every successor set is a level-1 tree
  std::vector<Path> anchors = dom();
  if (!ev) anchors.push_back(Path{});
  for (const Path& q : anchors) {
    LevelOneTree s = succ_set(q);
    if (Check c = s.validate())
      return fail(show(q) + "/" + c->where, "leveltree.succ-" + c->clause);
  }
  return ok();
}

}  // namespace leveltree
