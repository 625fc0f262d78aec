#pragma once

// Factor maps between composites: validation of the three preservation
// clauses, composition, the action on extended descriptions, continuity
// analysis with its decomposition, and predecessor nodes.
//
// Continuity is the printed clause list refined by realizability: a point
// only counts as discontinuous when the clause-pinned one-node extension can
// actually be placed (integer room exists). This keeps "exactly one of
// {continuous, decomposition}" true on all enumerated instances.

#include "descriptions.hpp"

namespace leveltree {

struct FactorMap {
  TreePtr src, dst;  // level <= m composites of equal level
  std::map<Node, Node, NodeBK> m1;
  std::vector<std::map<Path, Path, PathBK>> md;  // md[i]: level-(i+2) component

  int level() const { return src ? src->level() : 0; }

  const std::map<Path, Path, PathBK>& comp(int d) const { return md[d - 2]; }
  std::map<Path, Path, PathBK>& comp(int d) { return md[d - 2]; }

  static FactorMap empty(TreePtr s, TreePtr t) {
    FactorMap f;
    f.src = std::move(s);
    f.dst = std::move(t);
    f.md.resize(f.src->level() >= 2 ? f.src->level() - 1 : 0);
    return f;
  }

  static FactorMap identity(const TreePtr& t) {
    FactorMap f = empty(t, t);
    for (const Node& n : t->c1().nodes()) f.m1[n] = n;
    for (int d = 2; d <= t->level(); ++d)
      for (auto& [p, lab] : t->comp(d).labels()) f.comp(d)[p] = p;
    return f;
  }

  Node apply1(const Node& n) const { return m1.at(n); }
  Path apply(int d, const Path& p) const { return comp(d).at(p); }

  Slot apply(const Slot& s) const {
    if (s.d == 1) return Slot::at1(m1.at(s.n1));
    return Slot::at(s.d, comp(s.d).at(s.pd));
  }

  bool defined(const Slot& s) const {
    if (s.d == 1) return m1.count(s.n1) > 0;
    return s.d - 2 < static_cast<int>(md.size()) && comp(s.d).count(s.pd) > 0;
  }

  friend bool operator==(const FactorMap& a, const FactorMap& b) {
    return tree_eq(a.src, b.src) && tree_eq(a.dst, b.dst) && a.m1 == b.m1 && a.md == b.md;
  }
};

// ---------------------------------------------------------------------------
// Validation: order, extension and label preservation, componentwise.

inline Check validate_factor(const FactorMap& f) {
  if (!f.src || !f.dst) return fail("trees", "factor.null");
  if (f.src->level() != f.dst->level()) return fail("trees", "factor.level");
  // domain coverage
  if (f.m1.size() != f.src->c1().nodes().size()) return fail("c1", "factor.dom");
  for (const Node& n : f.src->c1().nodes())
    if (!f.m1.count(n)) return fail(show(n), "factor.dom");
  for (int d = 2; d <= f.src->level(); ++d) {
    if (f.comp(d).size() != f.src->comp(d).labels().size())
      return fail("component " + std::to_string(d), "factor.dom");
    for (auto& [p, lab] : f.src->comp(d).labels())
      if (!f.comp(d).count(p)) return fail(show(p), "factor.dom");
  }
  // level 1: ranges inside the target, both preservation clauses
  for (auto& [a, fa] : f.m1) {
    if (!f.dst->c1().contains(fa)) return fail(show(a), "factor.range");
    for (auto& [b, fb] : f.m1) {
      if ((bk_compare(a, b) < 0) != (bk_compare(fa, fb) < 0) && !(a == b))
        return fail(show(a) + "," + show(b), "factor.bk");
      if (b.extends(a) != fb.extends(fa)) return fail(show(a) + "," + show(b), "factor.ext");
    }
  }
  for (int d = 2; d <= f.src->level(); ++d) {
    const LevelTree& S = f.src->comp(d);
    const LevelTree& T = f.dst->comp(d);
    for (auto& [a, fa] : f.comp(d)) {
      if (!T.contains(fa)) return fail(show(a), "factor.range");
      if (!(S.label(a) == T.label(fa))) return fail(show(a), "factor.label");
      for (auto& [b, fb] : f.comp(d)) {
        if (!(a == b) && (bk_compare(a, b) < 0) != (bk_compare(fa, fb) < 0))
          return fail(show(a) + "," + show(b), "factor.bk");
        if (b.extends(a) != fb.extends(fa)) return fail(show(a) + "," + show(b), "factor.ext");
      }
    }
  }
  return ok();
}

inline FactorMap compose(const FactorMap& psi, const FactorMap& pi) {
  FactorMap r = FactorMap::empty(pi.src, psi.dst);
  for (auto& [a, b] : pi.m1) r.m1[a] = psi.m1.at(b);
  for (int d = 2; d <= pi.level(); ++d)
    for (auto& [a, b] : pi.comp(d)) r.comp(d)[a] = psi.comp(d).at(b);
  return r;
}

// ---------------------------------------------------------------------------
// Action on extended descriptions: rename the node, keep the tower.

inline DescEntry act_on_extended(const FactorMap& f, const DescEntry& e) {
  if (e.d == 1) {
    cover("act.level1");
    return DescEntry::at1(f.m1.at(e.n1));
  }
  const TreeDesc& q = e.q;
  if (q.constant) {
    cover("act.constant");
    return e;  // the constant description of the common level
  }
  TreeDesc out = q;
  if (!q.node.has_minus_marker()) {
    cover("act.discontinuous");
    out.node = f.apply(e.d, q.node);
  } else {
    cover("act.continuous");
    out.node = f.apply(e.d, q.node.parent()).with_minus();
  }
  return DescEntry::at(e.d, out);
}

// ---------------------------------------------------------------------------
// Continuity and decomposition.

struct OneNodeExtension {
  Attachment site;        // the node added to the source (with its tree)
  Slot image;             // where it is sent
  PartialTree new_label;  // label copied from the target (degree >= 2 sites)
  std::string clause;
};

// Extend the source by `site`, labelling the new node like its image, and
// extend the map.
inline std::pair<CompositeTree, FactorMap> apply_extension(const FactorMap& f,
                                                           const OneNodeExtension& x) {
  CompositeTree plus = *f.src;
  FactorMap g = f;
  if (x.site.deg == 1) {
    plus.c1().insert(x.site.n1);
    g.m1[x.site.n1] = x.image.n1;
  } else {
    plus.comp(x.site.deg).put(x.site.pd, x.new_label);
    g.comp(x.site.deg)[x.site.pd] = x.image.pd;
  }
  g.src = make_tree(std::move(plus));
  return {*g.src, g};
}

namespace detail {

// Candidate fresh nodes near the existing structure of a level-1 tree,
// deduplicated by structural position: fillers relating identically to every
// existing node differ only in naming, so only the least representative is
// kept. This is what makes decompositions unique.
inline std::vector<Node> filler_nodes(const LevelOneTree& t, int max_entry) {
  std::vector<Node> all = level_one_extensions(t, max_entry);
  std::map<std::vector<int>, Node> reps;
  for (const Node& cand : all) {
    std::vector<int> sig;
    for (const Node& s : t.nodes()) {
      sig.push_back(bk_compare(cand, s));
      sig.push_back(cand.extends(s) ? 1 : 0);
      sig.push_back(s.extends(cand) ? 1 : 0);
    }
    auto it = reps.find(sig);
    if (it == reps.end() || lex_compare(cand, it->second) < 0) reps[sig] = cand;
  }
  std::vector<Node> out;
  for (auto& [sig, n] : reps) out.push_back(n);
  return out;
}

inline int max_entry_of(const CompositeTree& t) {
  int m = 0;
  for (const Node& n : t.c1().nodes())
    for (int x : n.e) m = std::max(m, x);
  for (int d = 2; d <= t.level(); ++d)
    for (auto& [p, lab] : t.comp(d).labels())
      for (const Node& n : p.e)
        for (int x : n.e) m = std::max(m, x);
  return m;
}

}  // namespace detail

// All one-node extensions of (pi, T) resolving the discontinuity at `e`
// according to the printed clause for e's shape. Validity of the extended
// factoring is part of the filter.
inline std::vector<OneNodeExtension> decomposition_candidates(const FactorMap& f,
                                                              const DescEntry& e) {
  std::vector<OneNodeExtension> out;
  const CompositeTree& Q = *f.src;
  const CompositeTree& T = *f.dst;
  int maxE = std::max(detail::max_entry_of(Q), detail::max_entry_of(T)) + 1;

  auto try_push = [&](OneNodeExtension x) {
    if (!can_attach(Q, x.site)) return;
    auto [plus, g] = apply_extension(f, x);
    if (validate_composite(plus)) return;
    if (validate_factor(g)) return;
    out.push_back(std::move(x));
  };

  if (e.d == 1) {
    // fill just below e.n1: a fresh descendant of e.n1 mapped to the BK
    // successor of the image of its BK predecessor (min if none)
    for (const Node& cand : detail::filler_nodes(Q.c1(), maxE)) {
      // longest initial segment lying in the source must be e.n1
      Node anchor;
      for (int k = cand.size() - 1; k >= 1; --k) {
        if (Q.c1().contains(cand.prefix(k))) {
          anchor = cand.prefix(k);
          break;
        }
      }
      if (!(anchor == e.n1)) continue;
      std::optional<Node> pred;
      for (const Node& r : Q.c1().nodes())
        if (bk_compare(r, cand) < 0 && (!pred || bk_compare(*pred, r) < 0)) pred = r;
      std::optional<Node> target;
      if (pred)
        target = T.c1().bk_suc(f.m1.at(*pred));
      else
        target = T.c1().bk_min();
      if (!target) continue;
      OneNodeExtension x;
      x.site = Attachment::at1(cand);
      x.image = Slot::at1(*target);
      x.clause = "decomp.c1";
      try_push(std::move(x));
    }
    return out;
  }

  const TreeDesc& q = e.q;
  int d = e.d;
  if (!q.constant && q.node.empty() && d == 2) {
    // level-1 node above all existing images
    std::optional<Node> target;
    for (const Node& t : T.c1().nodes()) {
      bool above = true;
      for (auto& [r, fr] : f.m1)
        if (!(bk_compare(fr, t) < 0)) above = false;
      if (above && (!target || bk_compare(t, *target) < 0)) target = t;
    }
    if (!target) return out;
    for (const Node& cand : detail::filler_nodes(Q.c1(), maxE)) {
      if (cand.size() != 1) continue;
      OneNodeExtension x;
      x.site = Attachment::at1(cand);
      x.image = Slot::at1(*target);
      x.clause = "decomp.c2";
      try_push(std::move(x));
    }
    return out;
  }
  if (!q.constant && q.node.empty() && d > 2) {
    // length-1 node of the component below, carrying the target label
    int dd = d - 1;
    const LevelTree& TT = T.comp(dd);
    std::optional<Path> target;
    for (auto& [t, lab] : TT.labels()) {
      if (t.size() != 1) continue;
      bool above = true;
      for (auto& [r, fr] : f.comp(dd))
        if (!(bk_compare(fr, t) < 0)) above = false;
      if (above && (!target || bk_compare(t, *target) < 0)) target = t;
    }
    if (!target) return out;
    for (const Node& entry : detail::filler_nodes(Q.comp(dd).succ_set(Path{}), maxE)) {
      if (entry.size() != 1) continue;
      OneNodeExtension x;
      x.site = Attachment::at(dd, Path{entry}, TT.tree_at(*target));
      x.image = Slot::at(dd, *target);
      x.new_label = TT.label(*target);
      x.clause = "decomp.c3";
      try_push(std::move(x));
    }
    return out;
  }
  if (!q.constant && !q.node.empty() && !q.tower.continuous) {
    // new earlier sibling of q.node with q's tree; its image is the least
    // same-treed sibling of the image lying above every covered cone member
    const LevelTree& QQ = Q.comp(d);
    const LevelTree& TT = T.comp(d);
    Path par = q.node.parent();
    Path iq = f.comp(d).at(q.node);
    Path ipar = iq.parent();
    const TreePtr& ztree = QQ.tree_at(q.node);
    std::optional<Path> target;
    for (auto& [t, lab] : TT.labels()) {
      if (!(t.size() == q.node.size() && t.extends(ipar)) || t == iq) continue;
      if (!tree_eq(lab.base, ztree)) continue;
      bool above_cone = true;
      for (auto& [r, lr] : QQ.labels()) {
        if (r.size() == q.node.size() && r.extends(par) && !(r == q.node) &&
            bk_compare(r.last(), q.node.last()) < 0 && tree_eq(lr.base, ztree)) {
          if (!(bk_compare(f.comp(d).at(r), t) < 0)) above_cone = false;
        }
      }
      if (above_cone && (!target || bk_compare(t, *target) < 0)) target = t;
    }
    if (!target) return out;
    for (const Node& entry : detail::filler_nodes(QQ.succ_set(par), maxE)) {
      Path cand = par.child(entry);
      if (!(bk_compare(entry, q.node.last()) < 0)) continue;
      OneNodeExtension x;
      x.site = Attachment::at(d, cand, ztree);
      x.image = Slot::at(d, *target);
      x.new_label = TT.label(*target);
      x.clause = "decomp.c4";
      try_push(std::move(x));
    }
    return out;
  }
  if (!q.constant && q.tower.continuous && !q.node.has_minus_marker()) {
    // fresh topmost child of q.node carrying q's closing tree; image is the
    // least same-treed child of the image above every covered child
    const LevelTree& QQ = Q.comp(d);
    const LevelTree& TT = T.comp(d);
    Path iq = f.comp(d).at(q.node);
    const TreePtr& P = q.tower.closing;
    std::optional<Path> target;
    for (auto& [t, lab] : TT.labels()) {
      if (!(t.size() == iq.size() + 1 && t.extends(iq))) continue;
      if (!tree_eq(lab.base, P)) continue;
      bool above_children = true;
      for (auto& [r, lr] : QQ.labels())
        if (r.size() == q.node.size() + 1 && r.extends(q.node) && tree_eq(lr.base, P) &&
            !(bk_compare(f.comp(d).at(r), t) < 0))
          above_children = false;
      if (above_children && (!target || bk_compare(t, *target) < 0)) target = t;
    }
    if (!target) return out;
    for (const Node& entry : detail::filler_nodes(QQ.succ_set(q.node), maxE)) {
      bool topmost = true;
      for (const Node& c : QQ.succ_set(q.node).nodes())
        if (!(bk_compare(c, entry) < 0)) topmost = false;
      if (!topmost) continue;
      OneNodeExtension x;
      x.site = Attachment::at(d, q.node.child(entry), P);
      x.image = Slot::at(d, *target);
      x.new_label = TT.label(*target);
      x.clause = "decomp.c5";
      try_push(std::move(x));
    }
    return out;
  }
  return out;
}

// The printed continuity clauses, before the realizability refinement.
inline bool clause_continuous(const FactorMap& f, const DescEntry& e) {
  const CompositeTree& T = *f.dst;
  if (e.d == 1) {
    const Node& im = f.m1.at(e.n1);
    if (T.c1().bk_min() == im) {
      cover("cont.c1-min");
      return true;
    }
    auto pred = T.c1().bk_pred(im);
    if (pred) {
      for (auto& [a, fa] : f.m1)
        if (fa == *pred) {
          cover("cont.c1-pred");
          return true;
        }
    }
    return false;
  }
  const TreeDesc& q = e.q;
  int d = e.d;
  if (!q.constant && q.node.empty() && d % 2 == 0) {
    const LevelTree* low = d >= 3 ? &T.comp(d - 1) : nullptr;
    if (d == 2) {
      if (T.c1().empty()) {
        cover("cont.c2-empty");
        return true;
      }
      Node mx = *T.c1().bk_max();
      for (auto& [a, fa] : f.m1)
        if (fa == mx) {
          cover("cont.c2-max");
          return true;
        }
      return false;
    }
    if (low->empty()) {
      cover("cont.c2-empty");
      return true;
    }
    Path mx = *low->bk_max_dom();
    for (auto& [a, fa] : f.comp(d - 1))
      if (fa == mx) {
        cover("cont.c2-max");
        return true;
      }
    return false;
  }
  if (!q.constant && !q.node.empty() && !q.tower.continuous) {
    const LevelTree& TT = T.comp(d);
    Path iq = f.comp(d).at(q.node);
    auto cone = TT.minus_cone(iq);
    Path mx = cone.back();  // cones are nonempty and BK-sorted
    if (mx == iq.parent().with_minus()) {
      cover("cont.c3-marker");
      return true;
    }
    for (auto& [a, fa] : f.comp(d))
      if (fa == mx) {
        cover("cont.c3-ran");
        return true;
      }
    return false;
  }
  if (!q.constant && q.tower.continuous && !q.node.has_minus_marker()) {
    const LevelTree& TT = T.comp(d);
    Path iq = f.comp(d).at(q.node);
    LevelOneTree entries = TT.succ_with_tree(iq, q.tower.closing);
    auto mx = entries.bk_max();
    if (!mx) {
      cover("cont.c4-minus");
      return true;
    }
    Path t = iq.child(*mx);
    for (auto& [a, fa] : f.comp(d))
      if (fa == t) {
        cover("cont.c4-ran");
        return true;
      }
    return false;
  }
  // constants and continuous members are not regular; callers must not ask
  return true;
}

enum class Continuity { continuous, discontinuous };

// (pi, T) at a regular extended description or at (0,-1).
inline Continuity continuity_at(const FactorMap& f, const DescEntry& e) {
  assert(entry_regular(e, *f.src));
  if (clause_continuous(f, e)) return Continuity::continuous;
  if (decomposition_candidates(f, e).empty()) {
    cover("cont.unrealizable");
    return Continuity::continuous;
  }
  return Continuity::discontinuous;
}

inline Continuity continuity_at(const FactorMap& f, const UcfValue& u) {
  if (u.d == 0) {
    cover("cont.minus-one");
    return Continuity::discontinuous;
  }
  if (u.d == 1) return continuity_at(f, DescEntry::at1(u.node));
  return continuity_at(f, DescEntry::at(u.d, *u.desc));
}

// Unique one-node extension resolving a discontinuity.
inline std::optional<std::pair<CompositeTree, FactorMap>> decomposition(const FactorMap& f,
                                                                        const DescEntry& e) {
  if (clause_continuous(f, e)) return std::nullopt;
  auto cands = decomposition_candidates(f, e);
  if (cands.empty()) return std::nullopt;
  cover(cands.front().clause);
  return apply_extension(f, cands.front());
}

// ---------------------------------------------------------------------------
// pred(pi, T, (d, q)): the node of the target the discontinuity climbs to.

inline std::optional<Slot> pred_node(const FactorMap& f, const DescEntry& e) {
  const CompositeTree& T = *f.dst;
  if (e.d == 1) {
    auto p = T.c1().bk_pred(f.m1.at(e.n1));
    if (!p) return std::nullopt;
    cover("pred.c1");
    return Slot::at1(*p);
  }
  const TreeDesc& q = e.q;
  int d = e.d;
  if (!q.constant && q.node.empty()) {
    if (d == 2) {
      auto mx = T.c1().bk_max();
      if (!mx) return std::nullopt;
      cover("pred.c2");
      return Slot::at1(*mx);
    }
    auto mx = T.comp(d - 1).bk_max_dom();
    if (!mx) return std::nullopt;
    cover("pred.c2");
    return Slot::at(d - 1, *mx);
  }
  if (!q.constant && !q.node.empty() && !q.tower.continuous) {
    Path iq = f.comp(d).at(q.node);
    auto cone = T.comp(d).minus_cone(iq);
    Path mx = cone.back();
    if (mx.has_minus_marker()) return std::nullopt;  // only the formal marker below
    cover("pred.c3");
    return Slot::at(d, mx);
  }
  if (!q.constant && q.tower.continuous && !q.node.has_minus_marker()) {
    Path iq = f.comp(d).at(q.node);
    LevelOneTree entries = T.comp(d).succ_with_tree(iq, q.tower.closing);
    auto mx = entries.bk_max();
    if (!mx) return std::nullopt;
    cover("pred.c4");
    return Slot::at(d, iq.child(*mx));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pullback of target-indexed tuples.

template <typename V>
std::map<Slot, V, SlotLess> reindex(const std::map<Slot, V, SlotLess>& tuple,
                                    const FactorMap& f) {
  std::map<Slot, V, SlotLess> out;
  for (const Slot& s : f.src->dom()) out[s] = tuple.at(f.apply(s));
  return out;
}

}  // namespace leveltree
