#include <catch2/catch_amalgamated.hpp>

#include "leveltree/towers.hpp"

using namespace leveltree;

TEST_CASE("root labels are valid partial trees") {
  // (Q0^{(2n)} + empty top, (2n+1, ((0)), Z0)) with dom(Z0) = {(2i, ())}
  for (int n = 1; n <= 2; ++n) {
    PartialTree lab = even_root_label(2 * n + 2);
    CHECK(!validate_partial(lab));
    CHECK(lab.degree() == 2 * n + 1);
  }
}

TEST_CASE("degenerate partial trees") {
  // degenerate attachment needs a nonempty top on the odd side
  PartialTree bad;
  bad.base = make_tree(trivial_composite(3));
  bad.att = Attachment::degenerate();
  auto c = validate_partial(bad);
  REQUIRE(c.has_value());
  CHECK(c->clause == "partial.degenerate-guard");

  CompositeTree z = minimal_completion(even_root_label(4));
  PartialTree good;
  good.base = make_tree(z);
  good.att = Attachment::degenerate();
  CHECK(!validate_partial(good));
  CHECK(good.degree() == 0);
}

TEST_CASE("occupied sites are rejected") {
  CompositeTree z = minimal_completion(even_root_label(4));  // has node (3,((0)))
  PartialTree p;
  p.base = make_tree(z);
  p.att = Attachment::at(3, Path{Node{0}}, make_tree(trivial_composite(2)));
  auto c = validate_partial(p);
  REQUIRE(c.has_value());
  CHECK(c->clause == "partial.extension");
}

TEST_CASE("completions: exhaustive vs generate-and-filter") {
  PartialTree root = even_root_label(4);
  auto comps = completions(root, 1);
  REQUIRE(!comps.empty());
  for (const CompositeTree& c : comps) {
    CHECK(!validate_composite(c));
    CHECK(c.extends(*root.base));
    CHECK(c.dom_size() == root.base->dom_size() + 1);
    CHECK(c.comp(3).contains(Path{Node{0}}));
    CHECK(tree_eq(c.comp(3).tree_at(Path{Node{0}}), root.att.tree));
  }
  // monotone in the bound
  auto more = completions(root, 2);
  CHECK(more.size() >= comps.size());
  for (const CompositeTree& c : comps) {
    CHECK(std::count(more.begin(), more.end(), c) == 1);
  }
  // degree-0 input yields nothing
  PartialTree degen;
  degen.base = make_tree(minimal_completion(root));
  degen.att = Attachment::degenerate();
  CHECK(completions(degen, 2).empty());
}

TEST_CASE("towers along tree paths validate") {
  LevelTree q4 = minimal_even_tree(4);
  Tower tw = potential_tower_at(q4, Path{});
  CHECK(!validate_tower(tw));
  CHECK(tw.length() == 1);
  CHECK(tw.signature().empty());
  CHECK(!tw.continuous);

  // continuous form via a completion of the root label
  CompositeTree plus = minimal_completion(q4.label(Path{}));
  Tower cont = potential_tower_at(q4, Path{}, make_tree(plus));
  CHECK(cont.continuous);
  CHECK(!validate_tower(cont));
  CHECK(cont.signature().size() == 1);
}

TEST_CASE("empty continuous tower") {
  Tower t;
  t.m = 3;
  t.continuous = true;
  t.closing = make_tree(trivial_composite(3));
  CHECK(!validate_tower(t));
  // nonempty top is not a valid k = 0 closing tree on the odd side
  Tower bad = t;
  CompositeTree c = trivial_composite(3);
  c.comp(3).put(Path{Node{0}},
                PartialTree{make_tree(trivial_composite(2)), Attachment::degenerate()});
  bad.closing = make_tree(c);
  CHECK(validate_tower(bad).has_value());
}

TEST_CASE("broken chains are located") {
  LevelTree q4 = minimal_even_tree(4);
  CompositeTree plus = minimal_completion(q4.label(Path{}));
  Tower tw = potential_tower_at(q4, Path{});
  // second stage valid in isolation but not a completion of the first
  PartialTree stage2 = even_root_label(4);
  tw.stages.push_back(stage2);
  REQUIRE(!validate_partial(stage2));
  auto c = validate_tower(tw);
  REQUIRE(c.has_value());
  CHECK(c->clause == "tower.chain");
  CHECK(c->where.find("stage 1") == 0);
}

TEST_CASE("index offset follows parity") {
  Tower odd;
  odd.m = 3;
  CHECK(odd.index_offset() == 0);
  Tower even;
  even.m = 4;
  CHECK(even.index_offset() == 1);
}
