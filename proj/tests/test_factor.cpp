#include <catch2/catch_amalgamated.hpp>

#include "leveltree/factor.hpp"

using namespace leveltree;

namespace {

TreePtr chain_c1(std::vector<Node> ns) {
  CompositeTree t(1);
  for (Node& n : ns) t.c1().insert(n);
  return make_tree(std::move(t));
}

FactorMap map1(TreePtr s, TreePtr d, std::map<Node, Node, NodeBK> m) {
  FactorMap f = FactorMap::empty(std::move(s), std::move(d));
  f.m1 = std::move(m);
  return f;
}

}  // namespace

TEST_CASE("identity and inclusion factor") {
  TreePtr t = chain_c1({Node{0}, Node{0, 0}, Node{1}});
  FactorMap id = FactorMap::identity(t);
  CHECK(!validate_factor(id));

  TreePtr sub = chain_c1({Node{0}, Node{0, 0}});
  FactorMap inc = map1(sub, t, {{Node{0}, Node{0}}, {Node{0, 0}, Node{0, 0}}});
  CHECK(!validate_factor(inc));
}

TEST_CASE("a broken BK pair is rejected") {
  TreePtr s = chain_c1({Node{0}, Node{1}});
  TreePtr d = chain_c1({Node{0}, Node{1}});
  FactorMap bad = map1(s, d, {{Node{0}, Node{1}}, {Node{1}, Node{0}}});
  auto c = validate_factor(bad);
  REQUIRE(c.has_value());
  CHECK(c->clause == "factor.bk");
}

TEST_CASE("compose: identities are neutral and composition validates") {
  TreePtr a = chain_c1({Node{0}});
  TreePtr b = chain_c1({Node{0}, Node{1}});
  TreePtr c = chain_c1({Node{0}, Node{1}, Node{2}});
  FactorMap f = map1(a, b, {{Node{0}, Node{1}}});
  FactorMap g = map1(b, c, {{Node{0}, Node{0}}, {Node{1}, Node{2}}});
  REQUIRE(!validate_factor(f));
  REQUIRE(!validate_factor(g));
  FactorMap gf = compose(g, f);
  CHECK(!validate_factor(gf));
  CHECK(gf.m1.at(Node{0}) == Node{2});
  CHECK(compose(f, FactorMap::identity(a)) == f);
  CHECK(compose(FactorMap::identity(b), f) == f);
}

TEST_CASE("action on extended descriptions") {
  // composite pair of level 2 with a nontrivial inclusion
  CompositeTree src(2);
  src.comp(2) = minimal_even_tree(2);
  CompositeTree dst = src;
  CompositeTree w1(1);
  w1.c1().insert(Node{0});
  dst.comp(2).put(Path{Node{0}}, PartialTree{make_tree(w1), Attachment::degenerate()});
  REQUIRE(!validate_composite(src));
  REQUIRE(!validate_composite(dst));

  FactorMap f = FactorMap::empty(make_tree(src), make_tree(dst));
  f.comp(2)[Path{}] = Path{};
  REQUIRE(!validate_factor(f));

  // discontinuous descriptions get their node renamed
  DescEntry plain = DescEntry::at(2, plain_desc(src.comp(2), Path{}));
  DescEntry img = act_on_extended(f, plain);
  CHECK(img.q.node == Path{});
  CHECK(img.q.tower == plain.q.tower);

  // continuous descriptions land on the (-1)-extension of the mapped parent
  auto comps = completions(src.comp(2).label(Path{}), 0);
  REQUIRE(!comps.empty());
  DescEntry cont = DescEntry::at(2, continuous_desc(src.comp(2), Path{}, make_tree(comps[0])));
  DescEntry imgc = act_on_extended(f, cont);
  CHECK(imgc.q.node.has_minus_marker());
  CHECK(imgc.q.node.parent() == Path{});
}

TEST_CASE("functoriality of the action") {
  TreePtr a = chain_c1({Node{0}});
  TreePtr b = chain_c1({Node{0}, Node{1}});
  TreePtr c = chain_c1({Node{0}, Node{1}, Node{2}});
  FactorMap f = map1(a, b, {{Node{0}, Node{1}}});
  FactorMap g = map1(b, c, {{Node{0}, Node{0}}, {Node{1}, Node{2}}});
  DescEntry e = DescEntry::at1(Node{0});
  CHECK(act_on_extended(compose(g, f), e) == act_on_extended(g, act_on_extended(f, e)));
}

TEST_CASE("continuity at level 1") {
  // minimum of the target: continuous
  TreePtr s = chain_c1({Node{0}});
  TreePtr d2 = chain_c1({Node{0}, Node{0, 0}});
  FactorMap tomin = map1(s, d2, {{Node{0}, Node{0, 0}}});
  REQUIRE(!validate_factor(tomin));
  CHECK(continuity_at(tomin, DescEntry::at1(Node{0})) == Continuity::continuous);

  // image with uncovered predecessor: discontinuous, with a decomposition
  FactorMap up = map1(s, d2, {{Node{0}, Node{0}}});
  REQUIRE(!validate_factor(up));
  CHECK(continuity_at(up, DescEntry::at1(Node{0})) == Continuity::discontinuous);
  auto dec = decomposition(up, DescEntry::at1(Node{0}));
  REQUIRE(dec);
  auto& [plus, ext] = *dec;
  CHECK(!validate_composite(plus));
  CHECK(!validate_factor(ext));
  CHECK(plus.c1().contains(Node{0, 0}));
  CHECK(ext.m1.at(Node{0, 0}) == Node{0, 0});

  // covered predecessor: continuous
  TreePtr s2 = chain_c1({Node{0}, Node{0, 0}});
  FactorMap cov = map1(s2, d2, {{Node{0}, Node{0}}, {Node{0, 0}, Node{0, 0}}});
  CHECK(continuity_at(cov, DescEntry::at1(Node{0})) == Continuity::continuous);
}

TEST_CASE("minus-one point is discontinuous") {
  TreePtr s = chain_c1({Node{0}});
  FactorMap id = FactorMap::identity(s);
  CHECK(continuity_at(id, UcfValue::minus_one()) == Continuity::discontinuous);
}

TEST_CASE("empty lower component means continuity at the root description") {
  CompositeTree q(2);
  q.comp(2) = minimal_even_tree(2);
  FactorMap f = FactorMap::identity(make_tree(q));
  DescEntry e = DescEntry::at(2, plain_desc(q.comp(2), Path{}));
  CHECK(continuity_at(f, e) == Continuity::continuous);
}

TEST_CASE("decomposition at the root description covers the next level-1 node") {
  CompositeTree q(2);
  q.comp(2) = minimal_even_tree(2);
  CompositeTree t = q;
  t.c1().insert(Node{0});
  FactorMap f = FactorMap::empty(make_tree(q), make_tree(t));
  f.comp(2)[Path{}] = Path{};
  REQUIRE(!validate_factor(f));
  DescEntry e = DescEntry::at(2, plain_desc(q.comp(2), Path{}));
  CHECK(continuity_at(f, e) == Continuity::discontinuous);
  auto dec = decomposition(f, e);
  REQUIRE(dec);
  CHECK(dec->first.c1().contains(Node{0}));
  CHECK(dec->second.m1.at(Node{0}) == Node{0});
  // pred climbs to the BK-greatest level-1 node of the target
  auto p = pred_node(f, e);
  REQUIRE(p);
  CHECK(p->d == 1);
  CHECK(p->n1 == Node{0});
}

TEST_CASE("pred node lies in the target domain") {
  TreePtr s = chain_c1({Node{0}});
  TreePtr d2 = chain_c1({Node{0}, Node{0, 0}});
  FactorMap up = map1(s, d2, {{Node{0}, Node{0}}});
  auto p = pred_node(up, DescEntry::at1(Node{0}));
  REQUIRE(p);
  CHECK(d2->c1().contains(p->n1));
}

TEST_CASE("reindex pulls back along maps and respects composition") {
  TreePtr a = chain_c1({Node{0}});
  TreePtr b = chain_c1({Node{0}, Node{1}});
  TreePtr c = chain_c1({Node{0}, Node{1}, Node{2}});
  FactorMap f = map1(a, b, {{Node{0}, Node{1}}});
  FactorMap g = map1(b, c, {{Node{0}, Node{0}}, {Node{1}, Node{2}}});
  std::map<Slot, int, SlotLess> tup;
  int v = 0;
  for (const Slot& s : c->dom()) tup[s] = v++;
  auto direct = reindex(tup, compose(g, f));
  auto staged = reindex(reindex(tup, g), f);
  CHECK(direct == staged);
  CHECK(reindex(tup, FactorMap::identity(c)) == tup);
}
