#include <catch2/catch_amalgamated.hpp>

#include "leveltree/towers.hpp"

using namespace leveltree;

namespace {

// all well-formed nodes with entries < base and length <= len
std::vector<Node> all_nodes(int len, int base) {
  std::vector<Node> out{Node{}};
  for (int l = 0; l < len; ++l) {
    std::vector<Node> next;
    for (const Node& n : out) {
      if (n.size() == l) {
        for (int a = 0; a < base; ++a) next.push_back(n.child(a));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
  }
  std::vector<Node> res;
  for (Node& n : out)
    if (!n.empty()) res.push_back(n);
  return res;
}

}  // namespace

TEST_CASE("bk_compare basic cases") {
  CHECK(bk_compare(Node{0, 1}, Node{0}) < 0);   // proper extension sits below
  CHECK(bk_compare(Node{0}, Node{0}) == 0);
  CHECK(bk_compare(Node{0, -1}, Node{0, 3}) < 0);

  // the (-1)-extension of p lies below every (a)-extension of p
  Node p{0};
  for (int a = 0; a <= 5; ++a) {
    CHECK(bk_compare(p.child(-1), p.child(a)) < 0);
  }
}

TEST_CASE("bk_compare is a strict total order") {
  std::vector<Node> ns = all_nodes(3, 3);
  for (auto& a : ns)
    for (auto& b : ns) {
      int ab = bk_compare(a, b);
      int ba = bk_compare(b, a);
      CHECK(ab == -ba);
      if (!(a == b)) CHECK(ab != 0);
    }
  for (auto& a : ns)
    for (auto& b : ns)
      for (auto& c : ns) {
        if (bk_compare(a, b) < 0 && bk_compare(b, c) < 0) CHECK(bk_compare(a, c) < 0);
      }
}

TEST_CASE("validate_level_one_tree") {
  CHECK(!LevelOneTree{}.validate());
  LevelOneTree t{Node{0}, Node{0, 0}, Node{1}};
  CHECK(!t.validate());
  LevelOneTree bad{Node{0, 0}};
  auto c = bad.validate();
  REQUIRE(c.has_value());
  CHECK(c->where == "(0 0)");
  CHECK(c->clause == "level1.closure");
}

TEST_CASE("minimal even trees validate; root label pinned") {
  for (int d = 2; d <= 6; d += 2) {
    LevelTree t = minimal_even_tree(d);
    CHECK(!validate_tree(t));
  }
  // n = 1 root label: dom(Z0) = {(2, ())}
  LevelTree q4 = minimal_even_tree(4);
  const PartialTree& root = q4.label(Path{});
  CHECK(root.att.deg == 3);
  CHECK(root.att.pd == Path{Node{0}});
  REQUIRE(root.att.tree);
  CHECK(root.att.tree->level() == 2);
  CHECK(root.att.tree->comp(2).contains(Path{}));
  CHECK(root.att.tree->comp(2).size() == 1);
  CHECK(root.att.tree->c1().empty());
}

TEST_CASE("odd trees refuse the empty path") {
  LevelTree r(5);
  PartialTree lab;
  lab.base = make_tree(trivial_composite(4));
  lab.att = Attachment::degenerate();
  r.put(Path{}, lab);
  auto c = validate_tree(r);
  REQUIRE(c.has_value());
  CHECK(c->clause == "leveltree.odd-no-root");
}

TEST_CASE("regularity") {
  for (int n = 1; n <= 2; ++n) {
    CHECK(is_regular(trivial_composite(2 * n)));
    CHECK(is_regular(trivial_composite(2 * n + 1)));
  }
  LevelTree r(3);
  PartialTree lab;
  lab.base = make_tree(trivial_composite(2));
  lab.att = Attachment::degenerate();
  r.put(Path{Node{1}}, lab);
  CHECK(!is_regular(r));
  // empty-top composite with a stray level-1 node is not regular
  CompositeTree p = trivial_composite(3);
  p.c1().insert(Node{0});
  CHECK(!is_regular(p));
}

TEST_CASE("navigation: successor sets, dom*, cones") {
  // two-node level-2 tree: () -> ((0)) -> ((0)(1))
  LevelTree t(2);
  t.put(Path{}, even_root_label(2));
  CompositeTree w1(1);
  w1.c1().insert(Node{0});
  PartialTree l1;
  l1.base = make_tree(w1);
  l1.att = Attachment::at1(Node{1});
  t.put(Path{Node{0}}, l1);
  CompositeTree w2(1);
  w2.c1().insert(Node{0});
  w2.c1().insert(Node{1});
  PartialTree l2;
  l2.base = make_tree(w2);
  l2.att = Attachment::degenerate();
  t.put(Path{Node{0}, Node{1}}, l2);

  REQUIRE(!validate_tree(t));

  LevelOneTree s = t.succ_set(Path{});
  CHECK(s.size() == 1);
  CHECK(s.contains(Node{0}));

  auto ds = t.dom_star();
  CHECK(ds.size() == 2 * t.labels().size());

  // minus cone against the defining predicate evaluated over dom*
  Path q{Node{0}, Node{1}};
  auto cone = t.minus_cone(q);
  std::vector<Path> oracle;
  oracle.push_back(q.parent().with_minus());
  for (auto& [p, lab] : t.labels()) {
    if (p.size() == q.size() && p.extends(q.parent()) && !(p == q) &&
        bk_compare(p.last(), q.last()) < 0 && tree_eq(lab.base, t.tree_at(q)))
      oracle.push_back(p);
  }
  std::sort(oracle.begin(), oracle.end(), PathBK{});
  CHECK(cone == oracle);

  // plus cone is defined off-domain as well
  auto plus = t.plus_cone(Path{Node{0}, Node{2}}, t.tree_at(q));
  REQUIRE(!plus.empty());
  CHECK(plus.front() == Path{Node{0}});
}

TEST_CASE("dom* doubles the domain and successor sets validate") {
  LevelTree q4 = minimal_even_tree(4);
  CHECK(q4.dom_star().size() == 2u * q4.labels().size());
  for (auto& [p, lab] : q4.labels()) {
    CHECK(!q4.succ_set(p).validate());
  }
}
