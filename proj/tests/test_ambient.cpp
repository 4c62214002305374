#include <catch_amalgamated.hpp>

#include "anacat/fingrp.hpp"
#include "anacat/fingset.hpp"
#include "anacat/finset.hpp"

using namespace anacat;

namespace {

const FinSet S;

std::vector<SetArrow> all_set_maps(std::size_t n, std::size_t m) {
  return all_arrows(S, FinSet::set(n), FinSet::set(m));
}

}  // namespace

TEST_CASE("compose is element-wise and checks domains") {
  auto f = set_map(3, 2, {0, 0, 1});
  auto g = set_map(2, 3, {0, 2});
  CHECK(compose(f, g).table == std::vector<Elem>{0, 1});
  CHECK(compose(identity(f.cod), f) == f);
  CHECK(compose(f, identity(f.dom)) == f);
  CHECK_THROWS_AS(compose(f, f), Error);
  for (Elem x = 0; x < 2; ++x) CHECK(evaluate(compose(f, g), x) == evaluate(f, evaluate(g, x)));
  CHECK_THROWS_AS(evaluate(g, 2), Error);
  CHECK(elements(FinSet::set(3)) == std::vector<Elem>{0, 1, 2});
}

TEST_CASE("pullback normalisation and sizes") {
  auto f = set_map(3, 2, {0, 0, 1});
  auto pb = pullback(S, f, f);
  CHECK(pb.apex.size() == 5);
  CHECK(compose(f, pb.p1) == compose(f, pb.p2));

  auto g = set_map(4, 2, {1, 0, 1, 1});
  auto left = pullback(S, identity(g.cod), g);
  CHECK(left.apex == g.dom);
  CHECK(left.p1 == g);
  CHECK(left.p2 == identity(g.dom));
  auto right = pullback(S, g, identity(g.cod));
  CHECK(right.apex == g.dom);
  CHECK(right.p1 == identity(g.dom));
  CHECK(right.p2 == g);

  auto swap = set_map(2, 2, {1, 0});
  auto iso = pullback(S, swap, swap);
  CHECK(iso.apex.size() == 2);
  CHECK(is_iso(iso.p1));
}

TEST_CASE("mediate") {
  auto f = set_map(3, 2, {0, 0, 1});
  auto pb = pullback(S, f, f);
  CHECK(is_identity(mediate(pb, pb.p1, pb.p2)));
  auto diag = mediate(pb, identity(f.dom), identity(f.dom));
  for (Elem x = 0; x < 3; ++x) CHECK(pb.pairs[diag.table[x]] == ElemPair{x, x});
  CHECK_THROWS_AS(mediate(pb, set_map(1, 3, {0}), set_map(1, 3, {2})), Error);
}

TEST_CASE("pullback universal property against all probe cones") {
  // every cone from a probe of size <= 3 factors through the apex exactly once
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = 0; b <= 2; ++b)
      for (const auto& f : all_set_maps(a, 2))
        for (const auto& g : all_set_maps(b, 2)) {
          auto pb = pullback(S, f, g);
          for (std::size_t z = 0; z <= 3; ++z)
            for (const auto& p : all_set_maps(z, a))
              for (const auto& q : all_set_maps(z, b)) {
                if (!(compose(f, p) == compose(g, q))) continue;
                int count = 0;
                for (const auto& u : all_set_maps(z, pb.apex.size()))
                  if (compose(pb.p1, u) == p && compose(pb.p2, u) == q) ++count;
                REQUIRE(count == 1);
                CHECK(compose(pb.p1, mediate(pb, p, q)) == p);
              }
        }
}

TEST_CASE("products and coproducts") {
  CHECK(product(S, FinSet::set(2), FinSet::set(3)).apex.size() == 6);
  auto c = coproduct(S, FinSet::set(2), FinSet::set(3));
  CHECK(c.sum.size() == 5);
  CHECK(c.in1.table == std::vector<Elem>{0, 1});
  CHECK(c.in2.table == std::vector<Elem>{2, 3, 4});
  FinGrp grp;
  auto z2 = FinGrp::of(groups::cyclic(2));
  CHECK_THROWS_WITH(coproduct(grp, z2, z2), Catch::Matchers::ContainsSubstring("coproducts unsupported"));
  CHECK(product(grp, z2, z2).apex.size() == 4);
}

TEST_CASE("iso and inverse") {
  auto id = identity(FinSet::set(3));
  CHECK(is_iso(id));
  CHECK(inverse(id) == id);
  CHECK_FALSE(is_iso(set_map(3, 2, {0, 0, 1})));
  CHECK_THROWS_AS(inverse(set_map(3, 2, {0, 0, 1})), Error);
  auto swap = set_map(2, 2, {1, 0});
  CHECK(inverse(swap) == swap);
  CHECK(evaluate(swap, 0) == 1);
}

TEST_CASE("effectivity matches surjectivity in FinSet") {
  CHECK(is_effective(S, set_map(3, 2, {0, 0, 1})));
  CHECK_FALSE(is_effective(S, set_map(1, 2, {0})));
  CHECK(is_effective(S, identity(FinSet::set(2))));
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t m = 0; m <= 3; ++m)
      for (const auto& f : all_set_maps(n, m)) CHECK(is_effective(S, f) == is_surjective(f));
}

TEST_CASE("effectivity matches surjectivity in FinGrp") {
  FinGrp grp;
  auto objs = grp.objects_up_to(8);
  REQUIRE(objs.size() == 14);
  std::size_t checked = 0;
  for (const auto& a : objs)
    for (const auto& b : objs)
      for (const auto& f : all_arrows(grp, a, b)) {
        CHECK(is_effective(grp, f) == is_surjective(f));
        ++checked;
      }
  CHECK(checked > 500);
}

TEST_CASE("descend") {
  auto q = set_map(3, 2, {0, 0, 1});
  auto h = set_map(3, 8, {5, 5, 7});
  CHECK(descend(S, q, h).table == std::vector<Elem>{5, 7});
  CHECK(descend(S, identity(h.dom), h) == h);
  try {
    descend(S, q, set_map(3, 8, {5, 6, 7}));
    FAIL("expected a cocycle error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::cocycle);
  }
}

TEST_CASE("descended arrow is the unique factorisation") {
  for (std::size_t e = 1; e <= 4; ++e)
    for (std::size_t b = 1; b <= 3; ++b)
      for (const auto& q : all_set_maps(e, b)) {
        if (!is_surjective(q)) continue;
        for (std::size_t y = 1; y <= 3; ++y)
          for (const auto& g : all_set_maps(b, y)) {
            auto h = compose(g, q);
            auto d = descend(S, q, h);
            int count = 0;
            for (const auto& cand : all_set_maps(b, y))
              if (compose(cand, q) == h) ++count;
            CHECK(count == 1);
            CHECK(d == g);
          }
      }
}

TEST_CASE("finite groups") {
  for (const auto& g : groups::all_up_to(8)) {
    CHECK_NOTHROW(FiniteGroup::from_table(g->mul));
    for (Elem a = 0; a < g->order(); ++a) CHECK(g->op(a, g->inv[a]) == g->unit);
  }
  CHECK(groups::symmetric(3)->order() == 6);
  CHECK(groups::quaternion()->order() == 8);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 0}, {0, 1}}), Error);
  CHECK_THROWS_AS(groups::builtin("A5"), Error);

  FinGrp grp;
  auto z4 = FinGrp::of(groups::cyclic(4));
  auto z2 = FinGrp::of(groups::cyclic(2));
  CHECK(all_arrows(grp, z4, z2).size() == 2);
  CHECK(all_arrows(grp, z2, z4).size() == 2);
  CHECK(all_arrows(grp, z4, z4).size() == 4);
  CHECK_THROWS_AS(make_arrow(grp, z4, z2, {0, 1, 1, 0}), Error);
}

TEST_CASE("finite G-sets") {
  FinGSet triv(groups::trivial());
  CHECK(triv.objects_up_to(3).size() == 4);
  CHECK(all_arrows(triv, triv.trivial_action(3), triv.trivial_action(2)).size() == 8);

  FinGSet gs(groups::cyclic(2));
  auto orbit = gs.regular();
  auto pt = gs.terminal();
  auto pb = product(gs, orbit, orbit);
  CHECK(pb.apex.size() == 4);
  // diagonal action: generator swaps both coordinates
  for (Elem k = 0; k < 4; ++k) {
    auto [a, b] = pb.pairs[k];
    CHECK(pb.pairs[pb.apex.act[1][k]] == ElemPair{1 - a, 1 - b});
  }
  (void)pt;
  CHECK_THROWS_AS(make_arrow(gs, orbit, gs.trivial_action(2), {0, 1}), Error);
  CHECK_NOTHROW(make_arrow(gs, orbit, gs.terminal(), {0, 0}));
  CHECK_THROWS_AS(gs.gset(2, {{0, 1}, {0, 0}}), Error);
  // Z2 acts on {0,1} in two ways
  CHECK(gs.objects_up_to(2).size() == 1 + 1 + 2);
}
