#include <catch_amalgamated.hpp>

#include "anacat/ana.hpp"
#include "anacat/fingrp.hpp"
#include "anacat/finset.hpp"

using namespace anacat;

namespace {

const FinSet S;
using Cat = Category<FinSet>;
using Fun = Functor<FinSet>;
using Ana = Anafunctor<FinSet>;
using Trans = AnaTransformation<FinSet>;

/// One object, arrows Z2.
Cat bz2() {
  Cat y{FinSet::set(1), FinSet::set(2), set_map(2, 1, {0, 0}), set_map(2, 1, {0, 0}), set_map(1, 2, {0}),
        {}, std::nullopt};
  const auto& c = y.composable(S);
  std::vector<Elem> m(c.size());
  for (Elem k = 0; k < c.size(); ++k) m[k] = c.pairs[k].first ^ c.pairs[k].second;
  y.m = set_map(c.size(), 2, m);
  y.inv = identity(y.arr);
  return y;
}

/// The functor between categories with codiscrete target induced by f0.
Fun into_codisc(const Cat& x, const Cat& y, const SetArrow& f0) {
  auto sq = product(S, y.obj, y.obj);
  return Fun{x, y, f0, mediate(sq, compose(f0, x.s), compose(f0, x.t))};
}

Ana ana_into_codisc(const Cat& x, const SetArrow& cover, const Cat& y, const SetArrow& f0) {
  auto xu = base_change(S, x, cover);
  return Ana{x, y, cover, into_codisc(xu, y, f0)};
}

Fun point_at(const Cat& y, Elem a) {
  auto one = disc(S, FinSet::set(1));
  return Fun{one, y, set_map(1, y.obj.size(), {a}), set_map(1, y.arr.size(), {y.e(a)})};
}

/// All anafunctors disc(1) -|-> BZ2 on the cover n -> 1.
std::vector<Ana> cocycles(std::size_t n = 2) {
  auto x = disc(S, FinSet::set(1));
  auto cover = to_terminal(S, FinSet::set(n));
  auto xu = base_change(S, x, cover);
  std::vector<Ana> out;
  for (auto& f : all_functors(S, xu, bz2())) out.push_back(Ana{x, bz2(), cover, f});
  return out;
}

std::vector<Trans> all_ana_transformations(const Ana& f, const Ana& g) {
  return anacat::all_ana_transformations(S, f, g);
}

}  // namespace

TEST_CASE("functors as anafunctors") {
  auto c2 = codisc(S, FinSet::set(2));
  auto id = identity_ana(c2);
  CHECK(is_identity(id.cover));
  CHECK(id.functor.dom == c2);
  CHECK(validate_anafunctor(S, id, surjections(S)).passed());
  // composition of functors is preserved on the nose
  auto f = point_at(c2, 1);
  auto g = into_codisc(c2, codisc(S, FinSet::set(3)), set_map(2, 3, {2, 0}));
  CHECK(compose_ana(S, from_functor(f), from_functor(g)) == from_functor(compose_functors(g, f)));
}

TEST_CASE("composite cover sizes") {
  auto x = codisc(S, FinSet::set(2));
  auto y = codisc(S, FinSet::set(2));
  auto z = codisc(S, FinSet::set(2));
  auto u = set_map(3, 2, {0, 0, 1});
  auto f = ana_into_codisc(x, u, y, set_map(3, 2, {0, 0, 1}));
  auto g = ana_into_codisc(y, u, z, set_map(3, 2, {1, 0, 1}));
  auto gf = compose_ana(S, f, g);
  CHECK(gf.cover.dom.size() == 5);
  CHECK(validate_anafunctor(S, gf, surjections(S)).passed());
}

TEST_CASE("identity anafunctors are strict units") {
  auto x = codisc(S, FinSet::set(2));
  auto y = codisc(S, FinSet::set(3));
  auto f = ana_into_codisc(x, set_map(3, 2, {0, 1, 1}), y, set_map(3, 3, {2, 2, 0}));
  CHECK(compose_ana(S, f, identity_ana(y)) == f);
  CHECK(compose_ana(S, identity_ana(x), f) == f);
  for (const auto& c : cocycles()) {
    CHECK(compose_ana(S, c, identity_ana(c.tgt)) == c);
    CHECK(compose_ana(S, identity_ana(c.src), c) == c);
  }
}

TEST_CASE("identity transformations") {
  auto x = codisc(S, FinSet::set(2));
  auto f = point_at(x, 0);
  auto idf = identity_transformation(S, from_functor(f));
  CHECK(idf.comp == compose(x.e, f.f0));

  auto cech_like = ana_into_codisc(x, set_map(3, 2, {0, 0, 1}), codisc(S, FinSet::set(2)), set_map(3, 2, {1, 0, 1}));
  auto id = identity_transformation(S, cech_like);
  CHECK(id.comp.dom.size() == 5);
  CHECK(validate_ana_transformation(S, id).passed());
  CHECK(vcomp_trans(S, id, id) == id);
  CHECK(renaming_transformation(S, cech_like, identity(cech_like.cover.dom)) == id);
}

TEST_CASE("renaming transformations compose along refinements") {
  auto x = codisc(S, FinSet::set(2));
  auto f = ana_into_codisc(x, set_map(2, 2, {0, 1}), codisc(S, FinSet::set(2)), set_map(2, 2, {1, 0}));
  auto j = set_map(3, 2, {0, 1, 1});
  auto j2 = set_map(4, 3, {0, 1, 2, 2});
  auto r1 = renaming_transformation(S, f, j);
  auto r2 = renaming_transformation(S, r1.tgt, j2);
  auto both = renaming_transformation(S, f, compose(j, j2));
  CHECK(vcomp_trans(S, r1, r2) == both);
  CHECK(is_isotransformation(S, both));
  // k must commute with the covers
  CHECK_THROWS_AS(renaming_transformation(S, f, set_map(2, 3, {0, 0})), Error);
}

TEST_CASE("vertical composition by descent") {
  std::vector<Ana> cs;
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& c : cocycles(n)) cs.push_back(c);
  REQUIRE(cs.size() == 7);
  std::size_t checked = 0;
  for (const auto& f : cs)
    for (const auto& g : cs)
      for (const auto& h : cs)
        if (f.cover.dom.size() * h.cover.dom.size() <= 6)
        for (const auto& a : all_ana_transformations(f, g))
          for (const auto& b : all_ana_transformations(g, h)) {
            auto d = vcomp_data(S, a, b);
            auto ba = vcomp_trans(S, a, b);
            CHECK(validate_ana_transformation(S, ba).passed());
            // brute-force: exactly one component restricts to the local one
            int hits = 0;
            for (const auto& c : all_arrows(S, d.uw.apex, f.tgt.arr))
              if (compose(c, d.projection) == d.local) ++hits;
            CHECK(hits == 1);
            ++checked;
          }
  CHECK(checked >= 50);
}

TEST_CASE("vertical composition is associative and unital") {
  auto cs = cocycles();
  for (const auto& f : cs)
    for (const auto& g : cs)
      for (const auto& h : cs)
        for (const auto& a : all_ana_transformations(f, g))
          for (const auto& b : all_ana_transformations(g, h)) {
            CHECK(vcomp_trans(S, identity_transformation(S, f), a) == a);
            CHECK(vcomp_trans(S, a, identity_transformation(S, g)) == a);
            for (const auto& c : all_ana_transformations(h, f))
              CHECK(vcomp_trans(S, vcomp_trans(S, a, b), c) == vcomp_trans(S, a, vcomp_trans(S, b, c)));
          }
  for (const auto& f : cs)
    for (const auto& g : cs)
      for (const auto& a : all_ana_transformations(f, g))
        CHECK(vcomp_trans(S, a, invert_transformation(S, a)) == identity_transformation(S, f));
}

TEST_CASE("alpha_J preserves vertical composition") {
  auto x = codisc(S, FinSet::set(2));
  auto y = codisc(S, FinSet::set(3));
  std::vector<Fun> fs;
  for (const auto& f0 : all_arrows(S, x.obj, y.obj)) fs.push_back(into_codisc(x, y, f0));
  for (std::size_t i = 0; i < fs.size(); i += 2)
    for (std::size_t j = 0; j < fs.size(); j += 3)
      for (std::size_t k = 0; k < fs.size(); k += 4) {
        auto a = codisc_transformation(S, fs[i], fs[j]);
        auto b = codisc_transformation(S, fs[j], fs[k]);
        CHECK(vcomp_trans(S, alpha_J(S, a), alpha_J(S, b)) == alpha_J(S, vcomp_nat(S, a, b)));
      }
}

TEST_CASE("associator") {
  auto x = codisc(S, FinSet::set(2));
  auto u = set_map(3, 2, {0, 0, 1});
  auto f = ana_into_codisc(x, u, x, set_map(3, 2, {0, 1, 1}));
  auto g = ana_into_codisc(x, u, x, set_map(3, 2, {1, 0, 0}));
  auto h = ana_into_codisc(x, u, x, set_map(3, 2, {0, 0, 1}));
  auto a = associator(S, f, g, h);
  CHECK(validate_ana_transformation(S, a).passed());
  CHECK(is_isotransformation(S, a));
  auto id = identity_ana(x);
  CHECK(associator(S, id, g, h) == identity_transformation(S, compose_ana(S, g, h)));
  CHECK(associator(S, f, id, h) == identity_transformation(S, compose_ana(S, f, h)));
  CHECK(associator(S, f, g, id) == identity_transformation(S, compose_ana(S, f, g)));
}

TEST_CASE("whiskering and interchange") {
  auto cs = cocycles();
  auto one = disc(S, FinSet::set(1));
  auto bz = bz2();
  // endo-anafunctors of BZ2 given by the two group endomorphisms
  std::vector<Ana> ends;
  for (auto& f : all_functors(S, bz, bz)) ends.push_back(from_functor(f));
  REQUIRE(ends.size() == 2);

  for (const auto& f : cs)
    for (const auto& g : cs)
      for (const auto& a : all_ana_transformations(f, g)) {
        CHECK(whisker_ana(S, a, identity_ana(bz)) == a);
        CHECK(whisker_ana(S, identity_ana(one), a) == a);
        auto ida = whisker_ana(S, identity_transformation(S, f), ends[1]);
        CHECK(ida == identity_transformation(S, compose_ana(S, f, ends[1])));
      }

  std::size_t grid = 0;
  for (const auto& f : cs)
    for (const auto& f2 : cs)
      for (const auto& a : all_ana_transformations(f, f2))
        for (const auto& g : ends)
          for (const auto& g2 : ends)
            for (const auto& b : all_ana_transformations(g, g2)) {
              auto one_way = hcomp_trans(S, a, b);
              auto other = vcomp_trans(S, whisker_ana(S, f, b), whisker_ana(S, a, g2));
              CHECK(one_way == other);
              CHECK(validate_ana_transformation(S, one_way).passed());
              ++grid;
            }
  CHECK(grid > 0);
}

TEST_CASE("anafunctors isomorphic to functors") {
  auto x = codisc(S, FinSet::set(2));
  auto f = point_at(x, 1);
  auto r = is_isomorphic_to_functor(S, from_functor(f));
  REQUIRE(r.verdict == Verdict::yes);
  CHECK(*r.functor == f);

  auto y = codisc(S, FinSet::set(3));
  auto g = into_codisc(x, y, set_map(2, 3, {2, 0}));
  auto cover = set_map(3, 2, {0, 1, 1});
  Ana ga{x, y, cover, compose_functors(g, base_change_functor(S, x, cover))};
  auto rg = is_isomorphic_to_functor(S, ga);
  REQUIRE(rg.verdict == Verdict::yes);
  CHECK(*rg.functor == g);

  for (const auto& c : cocycles()) CHECK(is_isomorphic_to_functor(S, c).verdict == Verdict::yes);
}

TEST_CASE("pseudoinverses of J-equivalences") {
  auto surj = surjections(S);
  auto c2 = codisc(S, FinSet::set(2));
  auto w = point_at(c2, 0);
  auto p = pseudoinverse(S, w, surj, true);
  CHECK(p.inverse.cover.dom.size() == 2);
  CHECK(validate_anafunctor(S, p.inverse, surj).passed());
  CHECK(is_isotransformation(S, p.iota));
  CHECK(is_isotransformation(S, p.eps));
  auto back = vcomp_trans(S, p.iota, invert_transformation(S, p.iota));
  CHECK(back == identity_transformation(S, p.iota.src));

  auto id = identity_functor(c2);
  auto pid = pseudoinverse(S, id, surj, true);
  CHECK(pid.inverse == identity_ana(c2));
  CHECK(pid.iota == identity_transformation(S, identity_ana(c2)));
  CHECK(pid.eps == identity_transformation(S, identity_ana(c2)));

  CHECK_THROWS_AS(pseudoinverse(S, point_at(disc(S, FinSet::set(2)), 0), surj, true), Error);
}

TEST_CASE("anafunctors between internal groupoids in groups") {
  FinGrp grp;
  auto z2 = FinGrp::of(groups::cyclic(2));
  auto z4 = FinGrp::of(groups::cyclic(4));
  auto x = codisc(grp, z2);
  auto q = make_arrow(grp, z4, z2, {0, 1, 0, 1});
  auto f = base_change_functor(grp, x, q);
  Anafunctor<FinGrp> fa{x, x, q, f};
  auto epi = surjections(grp, 4, "epi-grp");
  CHECK(validate_anafunctor(grp, fa, epi).passed());
  auto id = identity_transformation(grp, fa);
  CHECK(validate_ana_transformation(grp, id).passed());
  CHECK(vcomp_trans(grp, id, id) == id);
  CHECK(compose_ana(grp, fa, identity_ana(x)) == fa);
}
