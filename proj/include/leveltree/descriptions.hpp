#pragma once

// Descriptions over a single level-d tree: plain nodes with their towers,
// continuous forms anchored at (-1)-extensions, the extended forms that drop
// the marker, and the odd-level constant. Uniform cofinalities of partial
// trees and towers return values in this vocabulary, so they live here too.

#include "towers.hpp"

namespace leveltree {

// ---------------------------------------------------------------------------
// TreeDesc: description over one level-d tree (d >= 2). The potential tower
// carries both the tree component and the attachment trace.

struct TreeDesc {
  int host_level = 2;
  bool constant = false;  // odd hosts only: the empty description
  Path node;              // q in dom*(host); minus marker <=> continuous type
  Tower tower;            // Q[q] or Q[q^-, P+]

  bool continuous_type() const { return !constant && node.has_minus_marker(); }

  // extended form that is not itself a description: concrete node paired
  // with a closing completion
  bool extended_extra() const { return !constant && !node.has_minus_marker() && tower.continuous; }

  TreePtr tree() const { return constant ? nullptr : tower.final_tree(); }

  friend bool operator==(const TreeDesc& a, const TreeDesc& b) {
    return a.host_level == b.host_level && a.constant == b.constant && a.node == b.node &&
           a.tower == b.tower;
  }
};

inline int desc_cmp(const TreeDesc& a, const TreeDesc& b) {
  if (a.host_level != b.host_level) return a.host_level < b.host_level ? -1 : 1;
  if (a.constant != b.constant) return a.constant ? -1 : 1;
  int c = bk_compare(a.node, b.node);
  if (c != 0) return c;
  return tower_cmp(a.tower, b.tower);
}

inline std::ostream& operator<<(std::ostream& os, const TreeDesc& d) {
  if (d.constant) return os << "<const>";
  return os << "<desc " << d.node << " len " << d.tower.length() << ">";
}

inline TreeDesc constant_desc(int host_level) {
  TreeDesc d;
  d.host_level = host_level;
  d.constant = true;
  return d;
}

inline TreeDesc plain_desc(const LevelTree& host, const Path& q) {
  TreeDesc d;
  d.host_level = host.level();
  d.node = q;
  d.tower = potential_tower_at(host, q);
  return d;
}

inline TreeDesc continuous_desc(const LevelTree& host, const Path& q, TreePtr closing) {
  TreeDesc d;
  d.host_level = host.level();
  d.node = q.with_minus();
  d.tower = potential_tower_at(host, q, std::move(closing));
  return d;
}

// (q, P, trace) with (q^(-1), P, trace) of continuous type
inline TreeDesc extended_desc(const LevelTree& host, const Path& q, TreePtr closing) {
  TreeDesc d;
  d.host_level = host.level();
  d.node = q;
  d.tower = potential_tower_at(host, q, std::move(closing));
  return d;
}

// Membership in desc(host) / desc*(host).
inline bool in_desc(const TreeDesc& d, const LevelTree& host) {
  if (d.host_level != host.level()) return false;
  if (d.constant) return !host.even();
  if (d.node.has_minus_marker()) {
    Path q = d.node.parent();
    if (!host.contains(q)) return false;
    if (!d.tower.continuous || !d.tower.closing) return false;
    TreeDesc expect = continuous_desc(host, q, d.tower.closing);
    return expect == d && completes(*d.tower.closing, host.label(q));
  }
  if (!host.contains(d.node)) return false;
  return plain_desc(host, d.node) == d;
}

inline bool in_desc_star(const TreeDesc& d, const LevelTree& host) {
  if (in_desc(d, host)) return true;
  if (d.constant || d.node.has_minus_marker()) return false;
  if (!host.contains(d.node)) return false;
  if (!d.tower.continuous || !d.tower.closing) return false;
  return extended_desc(host, d.node, d.tower.closing) == d &&
         completes(*d.tower.closing, host.label(d.node));
}

// regular extended descriptions: discontinuous members and proper extensions
inline bool is_regular_desc(const TreeDesc& d, const LevelTree& host) {
  if (!in_desc_star(d, host)) return false;
  if (!in_desc(d, host)) return true;
  return !d.continuous_type();
}

inline Check validate_description(const TreeDesc& d, const LevelTree& host) {
  if (d.host_level != host.level()) return fail(show(d.node), "desc.host-level");
  if (d.constant) {
    if (host.even()) return fail("<const>", "desc.constant-parity");
    cover("desc.constant");
    return ok();
  }
  if (Check c = validate_tower(d.tower)) return c;
  if (d.node.has_minus_marker()) {
    if (!in_desc(d, host)) return fail(show(d.node), "desc.continuous-shape");
    cover("desc.continuous");
    return ok();
  }
  if (!in_desc(d, host)) return fail(show(d.node), "desc.plain-shape");
  cover("desc.plain");
  return ok();
}

inline Check validate_extended(const TreeDesc& d, const LevelTree& host) {
  if (in_desc_star(d, host)) {
    if (d.extended_extra()) cover("desc.extended-extra");
    return ok();
  }
  return validate_description(d, host);  // produce a located failure
}

// All descriptions of a single host, continuous forms bounded by the entry
// bound on completions.
inline std::vector<TreeDesc> enumerate_descriptions(const LevelTree& host, int max_entry) {
  std::vector<TreeDesc> out;
  if (!host.even()) out.push_back(constant_desc(host.level()));
  for (auto& [q, lab] : host.labels()) out.push_back(plain_desc(host, q));
  for (auto& [q, lab] : host.labels())
    for (CompositeTree& c : completions(lab, max_entry))
      out.push_back(continuous_desc(host, q, make_tree(std::move(c))));
  std::sort(out.begin(), out.end(),
            [](const TreeDesc& a, const TreeDesc& b) { return desc_cmp(a, b) < 0; });
  return out;
}

inline std::vector<TreeDesc> enumerate_extended(const LevelTree& host, int max_entry) {
  std::vector<TreeDesc> out = enumerate_descriptions(host, max_entry);
  for (auto& [q, lab] : host.labels())
    for (CompositeTree& c : completions(lab, max_entry))
      out.push_back(extended_desc(host, q, make_tree(std::move(c))));
  std::sort(out.begin(), out.end(),
            [](const TreeDesc& a, const TreeDesc& b) { return desc_cmp(a, b) < 0; });
  return out;
}

// Composite-level entries: (1, node) or (d, description of the level-d part).
struct DescEntry {
  int d = 1;
  Node n1;
  TreeDesc q;

  static DescEntry at1(Node n) {
    DescEntry e;
    e.d = 1;
    e.n1 = std::move(n);
    return e;
  }
  static DescEntry at(int d, TreeDesc desc) {
    DescEntry e;
    e.d = d;
    e.q = std::move(desc);
    return e;
  }

  friend bool operator==(const DescEntry&, const DescEntry&) = default;
};

inline int desc_entry_cmp(const DescEntry& a, const DescEntry& b) {
  if (a.d != b.d) return a.d < b.d ? -1 : 1;
  if (a.d == 1) return bk_compare(a.n1, b.n1);
  return desc_cmp(a.q, b.q);
}

// (d, q) of continuous type iff d >= 2 and q is; level-1 entries count as
// discontinuous.
inline bool entry_continuous(const DescEntry& e) {
  return e.d >= 2 && e.q.continuous_type();
}

inline bool entry_regular(const DescEntry& e, const CompositeTree& host) {
  if (e.d == 1) return host.c1().contains(e.n1);
  return is_regular_desc(e.q, host.comp(e.d));
}

inline std::vector<DescEntry> enumerate_desc_entries(const CompositeTree& host, int max_entry,
                                                     bool extended) {
  std::vector<DescEntry> out;
  for (const Node& n : host.c1().nodes()) out.push_back(DescEntry::at1(n));
  for (int d = 2; d <= host.level(); ++d) {
    auto ds = extended ? enumerate_extended(host.comp(d), max_entry)
                       : enumerate_descriptions(host.comp(d), max_entry);
    for (TreeDesc& t : ds) out.push_back(DescEntry::at(d, std::move(t)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Uniform cofinality values: (0,-1), (1, node-or-empty), or (d, description).

struct UcfValue {
  int d = 0;
  Node node;                   // d == 1; empty node marks the top
  std::optional<TreeDesc> desc;  // d >= 2

  static UcfValue minus_one() { return UcfValue{}; }
  static UcfValue at1(Node n) { return UcfValue{1, std::move(n), std::nullopt}; }
  static UcfValue at(int d, TreeDesc t) { return UcfValue{d, {}, std::move(t)}; }

  bool is_minus_one() const { return d == 0; }

  friend bool operator==(const UcfValue& a, const UcfValue& b) {
    if (a.d != b.d) return false;
    if (a.d == 1) return a.node == b.node;
    if (a.d >= 2) return a.desc == b.desc;
    return true;
  }
};

inline std::ostream& operator<<(std::ostream& os, const UcfValue& u) {
  if (u.d == 0) return os << "(0 -1)";
  if (u.d == 1) return os << "(1 " << u.node << ")";
  return os << '(' << u.d << ' ' << *u.desc << ')';
}

// ucf(P, (d, p, Z)). The case split follows the degree; the level <= 1 base
// and the top-of-tree cases are the documented reconstructions.
inline UcfValue ucf_partial(const PartialTree& pt) {
  const CompositeTree& P = *pt.base;
  const Attachment& a = pt.att;
  int m = P.level();
  if (a.deg == 0) {
    cover("ucf.degenerate");
    return UcfValue::minus_one();
  }
  // recursion into the lower composite
  if (m % 2 == 1 && a.deg <= m - 1) {
    cover("ucf.odd.lower");
    return ucf_partial(PartialTree{make_tree(P.restrict_to(m - 1)), a});
  }
  if (m % 2 == 0 && a.deg <= m - 2) {
    cover("ucf.even.lower");
    return ucf_partial(PartialTree{make_tree(P.restrict_to(m - 2)), a});
  }
  if (m == 1) {
    // level <= 1 base: cone dispatch inside the level-1 tree
    const LevelOneTree& w = P.c1();
    const Node& p = a.n1;
    Node par = p.parent();
    std::optional<Node> least;
    for (const Node& s : w.nodes()) {
      if (s.size() == p.size() && s.extends(par) && bk_compare(s, p) > 0) {
        if (!least || bk_compare(s, *least) < 0) least = s;
      }
    }
    if (least) {
      cover("ucf.le1.sib");
      return UcfValue::at1(*least);
    }
    if (!par.empty()) {
      cover("ucf.le1.parent");
      return UcfValue::at1(par);
    }
    cover("ucf.le1.top");
    return UcfValue::at1(Node{});
  }
  int d = a.deg;
  const LevelTree& comp = P.comp(d);
  const Path& p = a.pd;
  Path par = p.parent();
  // even composites: a fresh length-1 site in the odd component climbs to the
  // even top's constant
  if (m % 2 == 0 && d == m - 1 && p.size() == 1) {
    bool sibs = false;
    for (auto& [r, lab] : comp.labels())
      if (r.size() == 1 && bk_compare(r.last(), p.last()) > 0 && tree_eq(lab.base, a.tree))
        sibs = true;
    if (!sibs) {
      cover("ucf.even.top");
      return UcfValue::at(m, plain_desc(P.comp(m), Path{}));
    }
  }
  // least later sibling carrying the site tree
  std::optional<Path> least;
  for (auto& [r, lab] : comp.labels()) {
    if (r.size() == p.size() && r.extends(par) && bk_compare(r.last(), p.last()) > 0 &&
        tree_eq(lab.base, a.tree)) {
      if (!least || bk_compare(r, *least) < 0) least = r;
    }
  }
  if (least) {
    cover(m % 2 == 1 ? "ucf.odd.sib" : "ucf.even.sib");
    return UcfValue::at(d, plain_desc(comp, *least));
  }
  if (!par.empty() || comp.even()) {
    cover(m % 2 == 1 ? "ucf.odd.pred" : "ucf.even.pred");
    return UcfValue::at(d, extended_desc(comp, par, a.tree));
  }
  // fresh length-1 site above everything on the odd side: the constant
  cover("ucf.odd.top");
  return UcfValue::at(d, constant_desc(d));
}

// Uniform cofinality of a tower; empty continuous towers have none.
inline std::optional<UcfValue> tower_ucf(const Tower& t) {
  if (!t.continuous) return ucf_partial(t.stages.back());
  if (t.stages.empty()) return std::nullopt;
  const Attachment& a = t.stages.back().att;
  if (a.deg == 1) {
    cover("ucf.tower.cont1");
    return UcfValue::at1(a.n1);
  }
  cover("ucf.tower.contd");
  return UcfValue::at(a.deg, plain_desc(t.closing->comp(a.deg), a.pd));
}

}  // namespace leveltree
