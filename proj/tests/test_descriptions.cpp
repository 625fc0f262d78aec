#include <catch2/catch_amalgamated.hpp>

#include "leveltree/factor.hpp"

using namespace leveltree;

namespace {

// a level-2 tree with two chained nodes, for navigation-heavy cases
LevelTree two_node_level2() {
  LevelTree t(2);
  t.put(Path{}, even_root_label(2));
  CompositeTree w1(1);
  w1.c1().insert(Node{0});
  PartialTree l1{make_tree(w1), Attachment::at1(Node{1})};
  t.put(Path{Node{0}}, l1);
  return t;
}

}  // namespace

TEST_CASE("constant and plain descriptions") {
  LevelTree q4 = minimal_even_tree(4);
  auto ds = enumerate_descriptions(q4, 1);
  // the even constant is the plain description at the empty path
  int plain = 0;
  for (auto& d : ds) {
    CHECK(!validate_description(d, q4));
    if (!d.continuous_type() && !d.constant) plain++;
  }
  CHECK(plain == q4.size());  // discontinuous entries biject with the domain

  LevelTree r5(5);
  auto rs = enumerate_descriptions(r5, 1);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].constant);
}

TEST_CASE("continuous descriptions come from completions") {
  LevelTree t = two_node_level2();
  REQUIRE(!validate_tree(t));
  auto ds = enumerate_descriptions(t, 1);
  int cont = 0;
  for (auto& d : ds)
    if (d.continuous_type()) {
      cont++;
      CHECK(in_desc(d, t));
      CHECK(!is_regular_desc(d, t));  // continuous members are not regular
    }
  CHECK(cont > 0);
  // count matches generate-and-filter over dom x completions
  int expect = 0;
  for (auto& [q, lab] : t.labels()) expect += (int)completions(lab, 1).size();
  CHECK(cont == expect);
}

TEST_CASE("extended descriptions and regularity") {
  LevelTree t = two_node_level2();
  auto xs = enumerate_extended(t, 1);
  int extra = 0;
  for (auto& d : xs) {
    CHECK(!validate_extended(d, t));
    if (d.extended_extra()) {
      extra++;
      CHECK(is_regular_desc(d, t));
      CHECK(!in_desc(d, t));
      // dropping the marker from the continuous description
      TreeDesc cont = d;
      cont.node = d.node.with_minus();
      CHECK(in_desc(cont, t));
    }
  }
  CHECK(extra > 0);
}

TEST_CASE("mutated descriptions fail validation") {
  LevelTree t = two_node_level2();
  TreeDesc d = plain_desc(t, Path{Node{0}});
  TreeDesc bad = d;
  bad.tower.stages.pop_back();  // trace no longer matches the node
  CHECK(validate_description(bad, t).has_value());
  TreeDesc bad2 = d;
  bad2.node = Path{Node{1}};
  CHECK(validate_description(bad2, t).has_value());
}

TEST_CASE("ucf of partial trees") {
  // degenerate marker
  CompositeTree z = minimal_completion(even_root_label(4));
  PartialTree degen{make_tree(z), Attachment::degenerate()};
  CHECK(ucf_partial(degen) == UcfValue::minus_one());

  // the root label of an even tree: fresh top site over an empty top
  UcfValue u = ucf_partial(even_root_label(4));
  CHECK(u.d == 3);
  REQUIRE(u.desc);
  CHECK(u.desc->constant);

  // level <= 1 base: first node, then a child, then a later sibling
  CompositeTree w(1);
  PartialTree first{make_tree(w), Attachment::at1(Node{0})};
  CHECK(ucf_partial(first) == UcfValue::at1(Node{}));
  CompositeTree w0(1);
  w0.c1().insert(Node{0});
  PartialTree child{make_tree(w0), Attachment::at1(Node{0, 0})};
  CHECK(ucf_partial(child) == UcfValue::at1(Node{0}));
  CompositeTree w01(1);
  w01.c1().insert(Node{0});
  w01.c1().insert(Node{0, 0});
  PartialTree mid{make_tree(w01), Attachment::at1(Node{0, 1})};
  CHECK(ucf_partial(mid) == UcfValue::at1(Node{0}));
}

TEST_CASE("ucf sits inside dom* or desc of the relevant tree") {
  LevelTree q4 = minimal_even_tree(4);
  for (auto& [q, lab] : q4.labels()) {
    UcfValue u = ucf_partial(lab);
    if (u.d >= 2) {
      REQUIRE(u.desc);
      if (!u.desc->constant) {
        CHECK(u.desc->host_level == u.d);
      }
    }
  }
}

TEST_CASE("tower ucf follows the kind") {
  LevelTree q4 = minimal_even_tree(4);
  Tower tw = potential_tower_at(q4, Path{});
  auto u = tower_ucf(tw);
  REQUIRE(u);
  CHECK(*u == ucf_partial(q4.label(Path{})));

  CompositeTree plus = minimal_completion(q4.label(Path{}));
  Tower cont = potential_tower_at(q4, Path{}, make_tree(plus));
  auto v = tower_ucf(cont);
  REQUIRE(v);
  CHECK(v->d == 3);  // degree of the last stage is 3 > 1
  REQUIRE(v->desc);
  CHECK(v->desc->node == Path{Node{0}});

  Tower empty;
  empty.m = 3;
  empty.continuous = true;
  empty.closing = make_tree(trivial_composite(3));
  CHECK(!tower_ucf(empty));
}
