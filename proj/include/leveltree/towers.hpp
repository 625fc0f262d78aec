#pragma once

// Partial trees, completions and towers. A partial tree (P, (d, p, Z)) marks
// a one-node extension site of the composite P; a tower is a chain of such
// partial trees where every stage's base completes its predecessor. Towers
// are the label language of level trees, so the full tree validator lives
// here as well.

#include "trees.hpp"

namespace leveltree {

// ---------------------------------------------------------------------------
// Attachment feasibility and realization.

// Whether the degenerate (0,-1,empty) attachment is admissible for Z:
// odd-level composites need a nonempty top component.
inline bool degenerate_allowed(const CompositeTree& z) {
  int m = z.level();
  if (m % 2 == 0) return true;
  if (m == 1) return !z.c1().empty();
  return !z.comp(m).empty();
}

inline bool tower_seed_matches(const CompositeTree& base, int m) {
  return base == trivial_composite(m);
}

// Checks that z is a completion of the partial tree lab: one new node at
// lab's site, carrying lab's tree, everything else unchanged.
inline bool completes(const CompositeTree& z, const PartialTree& lab) {
  if (lab.degree() == 0) return false;
  if (!lab.base || z.level() != lab.base->level()) return false;
  if (!z.extends(*lab.base)) return false;
  if (z.dom_size() != lab.base->dom_size() + 1) return false;
  const Attachment& a = lab.att;
  if (a.deg == 1) {
    return z.c1().contains(a.n1);
  }
  if (a.deg > z.level()) return false;
  const LevelTree& comp = z.comp(a.deg);
  if (!comp.contains(a.pd)) return false;
  return tree_eq(comp.tree_at(a.pd), a.tree);
}

// Site admissibility: the attachment adds one node to P and every label path
// through the new node still chains correctly. `require_regular` carries the
// odd-form regularity demand through to the extension.
inline bool can_attach(const CompositeTree& P, const Attachment& a) {
  int m = P.level();
  bool require_regular = (m % 2 == 1);
  if (a.deg == 0) return degenerate_allowed(P);
  if (a.deg < 1 || a.deg > m) return false;
  if (a.deg == 1) {
    if (a.tree) return false;
    if (!P.c1().can_insert(a.n1)) return false;
    // growth below an empty top breaks the pinned-domain regularity clause
    if (require_regular && m >= 3 && P.comp(m).empty()) return false;
    return true;
  }
  const Path& p = a.pd;
  if (!p.well_formed() || !p.is_concrete() || p.empty()) return false;
  if (!a.tree || a.tree->level() != a.deg - 1) return false;
  const LevelTree& comp = P.comp(a.deg);
  if (comp.contains(p)) return false;
  Path par = p.parent();
  bool ev = comp.even();
  if (par.empty()) {
    if (ev && !comp.contains(par)) return false;  // even root always present
  } else if (!comp.contains(par)) {
    return false;
  }
  if (!comp.succ_set(par).can_insert(p.last())) return false;
  // tower step for the new node
  if (!par.empty() || ev) {
    if (!completes(*a.tree, comp.label(par))) return false;
  } else {
    if (!tower_seed_matches(*a.tree, a.deg - 1)) return false;
  }
  if (require_regular) {
    if (a.deg == m && p == Path{Node{1}}) return false;
    if (a.deg < m && P.comp(m).empty()) return false;  // pinned-domain clause
  }
  return true;
}

// P plus the node of `a`, the new node labelled (a.tree, next). For degree 1
// `next` is ignored.
inline CompositeTree attach(const CompositeTree& P, const Attachment& a,
                            const Attachment& next) {
  CompositeTree r = P;
  if (a.deg == 1) {
    r.c1().insert(a.n1);
    return r;
  }
  PartialTree lab;
  lab.base = a.tree;
  lab.att = next;
  r.comp(a.deg).put(a.pd, lab);
  return r;
}

// ---------------------------------------------------------------------------
// Partial tree validation and completion enumeration.

inline Check validate_composite(const CompositeTree& t);

inline Check validate_partial(const PartialTree& pt) {
  if (!pt.base) return fail("base", "partial.null");
  const CompositeTree& P = *pt.base;
  if (Check c = validate_composite(P)) return c;
  if (P.level() % 2 == 1 && !is_regular(P)) return fail("base", "partial.regular");
  if (pt.att.deg == 0) {
    if (!(pt.att.n1 == Node{}) || !pt.att.pd.empty() || pt.att.tree)
      return fail("att", "partial.degenerate-form");
    if (!degenerate_allowed(P)) return fail("att", "partial.degenerate-guard");
    cover("partial.clause2");
    return ok();
  }
  if (pt.att.deg >= 2) {
    if (Check c = validate_composite(*pt.att.tree)) return c;
    if (pt.att.deg % 2 == 0 && !is_regular(*pt.att.tree))
      return fail("att.tree", "partial.site-tree-regular");
  }
  if (!can_attach(P, pt.att)) return fail("att", "partial.extension");
  cover("partial.clause1");
  return ok();
}

// All valid attachments of Z with new entries bounded by max_entry.
// Recursion descends through the tree components of nested sites.
inline std::vector<Attachment> enumerate_attachments(const CompositeTree& z, int max_entry);

inline Attachment minimal_attachment(const CompositeTree& z) {
  if (degenerate_allowed(z)) return Attachment::degenerate();
  int m = z.level();
  // odd level, empty top: the first top node
  if (m == 1) return Attachment::at1(Node{0});
  return Attachment::at(m, Path{Node{0}}, make_tree(trivial_composite(m - 1)));
}

// Completions of (P,(d,p,Z)): realize the site, one result per admissible
// label attachment of Z.
inline std::vector<CompositeTree> completions(const PartialTree& pt, int max_entry) {
  std::vector<CompositeTree> out;
  if (pt.degree() == 0) return out;
  if (!can_attach(*pt.base, pt.att)) return out;
  if (pt.att.deg == 1) {
    out.push_back(attach(*pt.base, pt.att, Attachment{}));
    return out;
  }
  for (const Attachment& next : enumerate_attachments(*pt.att.tree, max_entry))
    out.push_back(attach(*pt.base, pt.att, next));
  return out;
}

inline CompositeTree minimal_completion(const PartialTree& pt) {
  assert(pt.degree() > 0);
  if (pt.att.deg == 1) return attach(*pt.base, pt.att, Attachment{});
  return attach(*pt.base, pt.att, minimal_attachment(*pt.att.tree));
}

// Candidate new single nodes for a level-1 tree, entries bounded.
inline std::vector<Node> level_one_extensions(const LevelOneTree& t, int max_entry) {
  std::vector<Node> v;
  for (int j = 0; j <= max_entry; ++j) {
    Node n{j};
    if (t.can_insert(n)) v.push_back(n);
  }
  for (const Node& b : t.nodes()) {
    for (int j = 0; j <= max_entry; ++j) {
      Node n = b.child(j);
      if (t.can_insert(n)) v.push_back(n);
    }
  }
  return v;
}

inline std::vector<Attachment> enumerate_attachments(const CompositeTree& z, int max_entry) {
  std::vector<Attachment> out;
  if (degenerate_allowed(z)) out.push_back(Attachment::degenerate());
  int m = z.level();
  // degree-1 sites
  for (const Node& n : level_one_extensions(z.c1(), max_entry)) {
    Attachment a = Attachment::at1(n);
    if (can_attach(z, a)) out.push_back(a);
  }
  // higher sites: q^(a) under each anchor (including the odd-side root)
  for (int d = 2; d <= m; ++d) {
    const LevelTree& comp = z.comp(d);
    std::vector<Path> anchors = comp.dom();
    if (!comp.even()) anchors.push_back(Path{});
    for (const Path& q : anchors) {
      LevelOneTree succ = comp.succ_set(q);
      for (const Node& a : level_one_extensions(succ, max_entry)) {
        Path p = q.child(a);
        // the site tree is forced: completion of the anchor label, or seed
        std::vector<CompositeTree> trees;
        if (!q.empty() || comp.even()) {
          for (CompositeTree& c : completions(comp.label(q), max_entry))
            trees.push_back(std::move(c));
        } else {
          trees.push_back(trivial_composite(d - 1));
        }
        for (CompositeTree& zt : trees) {
          Attachment att = Attachment::at(d, p, make_tree(std::move(zt)));
          if (can_attach(z, att)) out.push_back(att);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Attachment& a, const Attachment& b) { return attachment_cmp(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Towers.

struct Tower {
  int m = 1;                        // stages are partial level <= m trees
  std::vector<PartialTree> stages;  // attachment stages in order
  bool continuous = false;
  TreePtr closing;                  // continuous form: the closing completion

  // towers over odd-level composites are written from index 0, even from 1
  int index_offset() const { return m % 2 == 0 ? 1 : 0; }

  int length() const { return static_cast<int>(stages.size()); }

  const PartialTree& last() const { return stages.back(); }

  // the tree the tower presents: last base for discontinuous potential form,
  // the closing tree otherwise
  TreePtr final_tree() const {
    if (continuous) return closing;
    return stages.empty() ? nullptr : stages.back().base;
  }

  std::vector<Attachment> signature() const {
    std::vector<Attachment> v;
    if (stages.empty()) return v;
    std::size_t upto = continuous ? stages.size() : stages.size() - 1;
    for (std::size_t i = 0; i < upto; ++i) v.push_back(stages[i].att);
    return v;
  }

  Tower truncate(int k) const {  // first k attachment stages, discontinuous
    Tower t;
    t.m = m;
    t.stages.assign(stages.begin(), stages.begin() + k);
    return t;
  }

  friend bool operator==(const Tower& a, const Tower& b) {
    return a.m == b.m && a.continuous == b.continuous && a.stages == b.stages &&
           tree_eq(a.closing, b.closing);
  }
};

inline int tower_cmp(const Tower& a, const Tower& b);

inline Check validate_tower(const Tower& t) {
  if (!t.continuous && t.stages.empty()) return fail("stages", "tower.nonempty");
  for (std::size_t i = 0; i < t.stages.size(); ++i) {
    if (t.stages[i].base && t.stages[i].base->level() != t.m)
      return fail("stage " + std::to_string(i), "tower.level");
    if (Check c = validate_partial(t.stages[i]))
      return fail("stage " + std::to_string(i) + ": " + c->where, "tower." + c->clause);
    if (i + 1 < t.stages.size() && t.stages[i].degree() == 0)
      return fail("stage " + std::to_string(i), "tower.degenerate-not-last");
  }
  if (!t.stages.empty() && !tower_seed_matches(*t.stages[0].base, t.m))
    return fail("stage 0", "tower.seed");
  for (std::size_t i = 0; i + 1 < t.stages.size(); ++i) {
    if (!completes(*t.stages[i + 1].base, t.stages[i]))
      return fail("stage " + std::to_string(i + 1), "tower.chain");
  }
  if (t.continuous) {
    if (!t.closing) return fail("closing", "tower.closing-missing");
    if (t.closing->level() != t.m) return fail("closing", "tower.level");
    if (t.stages.empty()) {
      cover("tower.continuous-k0");
      if (!tower_seed_matches(*t.closing, t.m))
        return fail("closing", "tower.continuous-seed");
    } else {
      cover("tower.continuous");
      if (!completes(*t.closing, t.stages.back()))
        return fail("closing", "tower.closing-chain");
    }
  } else {
    cover("tower.discontinuous");
  }
  return ok();
}

inline int tower_cmp(const Tower& a, const Tower& b) {
  if (a.m != b.m) return a.m < b.m ? -1 : 1;
  if (a.continuous != b.continuous) return a.continuous ? 1 : -1;
  if (a.stages.size() != b.stages.size())
    return a.stages.size() < b.stages.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.stages.size(); ++i) {
    int c = partial_cmp(a.stages[i], b.stages[i]);
    if (c != 0) return c;
  }
  return tree_cmp(a.closing, b.closing);
}

// ---------------------------------------------------------------------------
// Towers read off level trees.

// Q[q] (no completion) and Q[q, P+] (with one): the potential tower of the
// label path through q.
inline Tower potential_tower_at(const LevelTree& t, const Path& q,
                                const TreePtr& completion = nullptr) {
  Tower tw;
  tw.m = t.level() - 1;
  int start = t.even() ? 0 : 1;
  for (int l = start; l <= q.size(); ++l) tw.stages.push_back(t.label(q.prefix(l)));
  if (completion) {
    tw.continuous = true;
    tw.closing = completion;
  }
  return tw;
}

// ---------------------------------------------------------------------------
// Full validation of level trees and composites.

inline Check validate_tree(const LevelTree& t) {
  if (Check c = t.validate_structure()) return c;
  int d = t.level();
  if (t.even()) {
    cover("leveltree.even");
    if (!(t.label(Path{}) == even_root_label(d)))
      return fail("()", "leveltree.root-label");
  } else {
    cover("leveltree.odd");
  }
  for (auto& [q, lab] : t.labels()) {
    if (!lab.base || lab.base->level() != d - 1) return fail(show(q), "leveltree.label-level");
    Tower tw = potential_tower_at(t, q);
    if (Check c = validate_tower(tw))
      return fail(show(q) + ": " + c->where, c->clause);
  }
  return ok();
}

inline Check validate_composite(const CompositeTree& t) {
  if (Check c = t.c1().validate()) return c;
  for (int d = 2; d <= t.level(); ++d) {
    if (t.comp(d).level() != d) return fail("component " + std::to_string(d), "composite.level");
    if (Check c = validate_tree(t.comp(d)))
      return fail("component " + std::to_string(d) + ": " + c->where, c->clause);
  }
  return ok();
}

}  // namespace leveltree
