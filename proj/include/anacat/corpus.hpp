#pragma once

// Deterministic corpus of small internal categories, functors and
// anafunctors in the three shipped ambients.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "anacat/ana.hpp"
#include "anacat/crossed_module.hpp"
#include "anacat/fingrp.hpp"
#include "anacat/fingset.hpp"
#include "anacat/finset.hpp"

namespace anacat {

struct CorpusBounds {
  std::size_t max_objects = 4;
  std::size_t max_arrows = 10;
  std::size_t random_per_ambient = 12;
  std::size_t max_cover = 3;  // elements added over the objects by a random cover
};

template <class T>
struct Named {
  std::string name;
  T value;
};

template <Ambient S>
struct CorpusPart {
  S amb;
  std::string tag;
  Pretopology<S> J;
  std::vector<Named<Category<S>>> categories;
  std::vector<Named<Functor<S>>> functors;
  std::vector<Named<Anafunctor<S>>> anafunctors;
};

struct Corpus {
  std::uint64_t seed = 1;
  CorpusBounds bounds;
  CorpusPart<FinSet> set;
  CorpusPart<FinGrp> grp;
  CorpusPart<FinGSet> gset;

  std::size_t category_count() const { return set.categories.size() + grp.categories.size() + gset.categories.size(); }
};

namespace detail {

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine() % n); }
  bool coin(unsigned percent) { return below(100) < percent; }
};

/// The category of a preorder given by a reflexive relation (closed here).
inline Category<FinSet> preorder_category(std::size_t n, std::vector<std::vector<bool>> rel) {
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;
  std::vector<ElemPair> arrows;
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j)
      if (i == j || rel[i][j]) arrows.emplace_back(i, j);
  const std::size_t na = arrows.size();
  auto index = [&](Elem i, Elem j) {
    return static_cast<Elem>(std::find(arrows.begin(), arrows.end(), ElemPair{i, j}) - arrows.begin());
  };
  std::vector<Elem> s(na), t(na), e(n);
  for (Elem k = 0; k < na; ++k) std::tie(s[k], t[k]) = arrows[k];
  for (Elem i = 0; i < n; ++i) e[i] = index(i, i);
  Category<FinSet> x{FinSet::set(n), FinSet::set(na), set_map(na, n, s), set_map(na, n, t), set_map(n, na, e), {},
                     std::nullopt};
  const auto& c = x.composable(FinSet{});
  std::vector<Elem> m(c.size());
  for (Elem k = 0; k < c.size(); ++k) {
    auto [g, f] = c.pairs[k];
    m[k] = index(arrows[f].first, arrows[g].second);
  }
  x.m = set_map(c.size(), na, m);
  return x;
}

/// One object with arrows the group G.
template <Ambient S>
Category<S> one_object(const S& amb, const ObjectOf<S>& pt, const ObjectOf<S>& arr, const FiniteGroup& g) {
  const Elem n = static_cast<Elem>(g.order());
  Category<S> y{pt, arr, to_terminal(amb, arr), to_terminal(amb, arr), make_arrow(amb, pt, arr, {g.unit}), {},
                std::nullopt};
  const auto& c = y.composable(amb);
  std::vector<Elem> m(c.size());
  for (Elem k = 0; k < c.size(); ++k) m[k] = g.op(c.pairs[k].first, c.pairs[k].second);
  y.m = make_arrow(amb, c.apex, arr, std::move(m));
  std::vector<Elem> inv(g.inv.begin(), g.inv.end());
  y.inv = make_arrow(amb, arr, arr, std::move(inv));
  (void)n;
  return y;
}

/// The action groupoid of G acting on {0..n-1}; arrow (g, a) : a -> g a at g n + a.
inline Category<FinSet> action_groupoid(const FiniteGroup& g, const std::vector<std::vector<Elem>>& act) {
  const Elem ng = static_cast<Elem>(g.order()), n = static_cast<Elem>(act.empty() ? 0 : act[0].size());
  const Elem na = ng * n;
  std::vector<Elem> s(na), t(na), e(n), inv(na);
  for (Elem h = 0; h < ng; ++h)
    for (Elem a = 0; a < n; ++a) {
      s[h * n + a] = a;
      t[h * n + a] = act[h][a];
      inv[h * n + a] = g.inv[h] * n + act[h][a];
    }
  for (Elem a = 0; a < n; ++a) e[a] = g.unit * n + a;
  Category<FinSet> x{FinSet::set(n), FinSet::set(na), set_map(na, n, s), set_map(na, n, t), set_map(n, na, e), {},
                     set_map(na, na, inv)};
  const auto& c = x.composable(FinSet{});
  std::vector<Elem> m(c.size());
  for (Elem k = 0; k < c.size(); ++k) {
    auto [q, p] = c.pairs[k];
    m[k] = g.op(q / n, p / n) * n + p % n;
  }
  x.m = set_map(c.size(), na, m);
  return x;
}

template <Ambient S>
std::optional<ArrowOf<S>> random_arrow(const S& amb, const ObjectOf<S>& dom, const ObjectOf<S>& cod, Rng& rng,
                                       bool surjective) {
  std::vector<ArrowOf<S>> pool;
  search_arrows(amb, dom, cod, {}, [&](const ArrowOf<S>& f) {
    if (!surjective || is_surjective(f)) pool.push_back(f);
    return pool.size() < 64;
  });
  if (pool.empty()) return std::nullopt;
  return pool[rng.below(pool.size())];
}

/// The functor disc(1) -> X at a fixed point of the object object.
template <Ambient S>
std::optional<Functor<S>> point_functor(const S& amb, const Category<S>& x, Elem a) {
  auto pt = amb.terminal();
  auto one = disc(amb, pt);
  if (!amb.is_morphism(pt, x.obj, std::vector<Elem>{a})) return std::nullopt;
  return Functor<S>{one, x, ArrowOf<S>{pt, x.obj, {a}}, ArrowOf<S>{pt, x.arr, {x.e(a)}}};
}

template <Ambient S>
Functor<S> to_point_functor(const S& amb, const Category<S>& x) {
  auto one = disc(amb, amb.terminal());
  return Functor<S>{x, one, to_terminal(amb, x.obj), to_terminal(amb, x.arr)};
}

/// Functor Cech(f) -> disc(cod f).
template <Ambient S>
Functor<S> cech_to_disc(const S& amb, const ArrowOf<S>& f) {
  auto c = cech(amb, f);
  return Functor<S>{c, disc(amb, f.cod), f, compose(f, c.s)};
}

template <Ambient S>
void add_category(CorpusPart<S>& part, std::string name, Category<S> x, const CorpusBounds& b, bool fixture) {
  if (!fixture && (x.obj.size() > b.max_objects || x.arr.size() > b.max_arrows)) return;
  part.categories.push_back({std::move(name), std::move(x)});
}

/// Functors and anafunctors built from the categories of a part.
template <Ambient S>
void derive_morphisms(CorpusPart<S>& part, const CorpusBounds& b, Rng& rng) {
  const auto& amb = part.amb;
  const std::size_t ncat = part.categories.size();
  for (std::size_t i = 0; i < ncat; ++i) {
    const auto& [name, x] = part.categories[i];
    if (x.obj.size() == 0) continue;
    part.functors.push_back({"id(" + name + ")", identity_functor(x)});
    part.functors.push_back({"toCodisc(" + name + ")", to_codisc(amb, x)});
    part.functors.push_back({"fromDisc(" + name + ")", from_disc(amb, x)});
    part.functors.push_back({"toPoint(" + name + ")", to_point_functor(amb, x)});
    for (Elem a = 0; a < x.obj.size(); ++a)
      if (auto p = point_functor(amb, x, a))
        part.functors.push_back({"point(" + name + "," + std::to_string(a) + ")", *p});
    // a random cover of the objects and its base change
    auto objs = amb.objects_up_to(x.obj.size() + b.max_cover);
    std::vector<ObjectOf<S>> doms;
    for (const auto& o : objs)
      if (o.size() >= x.obj.size() && o.size() <= x.obj.size() + b.max_cover) doms.push_back(o);
    for (std::size_t tries = 0; tries < 4 && !doms.empty(); ++tries) {
      const auto& u = doms[rng.below(doms.size())];
      auto cover = random_arrow(amb, u, x.obj, rng, true);
      if (!cover || is_identity(*cover)) continue;
      auto w = base_change_functor(amb, x, *cover);
      if (w.dom.arr.size() > 4 * b.max_arrows) continue;
      part.functors.push_back({"baseChange(" + name + "," + std::to_string(u.size()) + ")", w});
      break;
    }
  }
  // anafunctors: functors, and functors precomposed with a random cover
  const std::size_t nf = part.functors.size();
  for (std::size_t k = 0; k < nf; ++k) {
    const auto& [name, f] = part.functors[k];
    if (f.dom.arr.size() > b.max_arrows) continue;
    part.anafunctors.push_back({"ana(" + name + ")", from_functor(f)});
    if (f.dom.obj.size() == 0 || !rng.coin(50)) continue;
    auto u = amb.objects_up_to(f.dom.obj.size() + 1);
    std::vector<ObjectOf<S>> doms;
    for (const auto& o : u)
      if (o.size() == f.dom.obj.size() + 1) doms.push_back(o);
    if (doms.empty()) continue;
    auto cover = random_arrow(amb, doms[rng.below(doms.size())], f.dom.obj, rng, true);
    if (!cover) continue;
    auto can = base_change_functor(amb, f.dom, *cover);
    part.anafunctors.push_back(
        {"ana(" + name + ")@" + std::to_string(cover->dom.size()),
         Anafunctor<S>{f.dom, f.cod, *cover, compose_functors(f, can)}});
  }
}

}  // namespace detail

inline CorpusPart<FinSet> corpus_finset(std::uint64_t seed, const CorpusBounds& b) {
  FinSet amb;
  CorpusPart<FinSet> part{amb, "finset", surjections(amb), {}, {}, {}};
  detail::Rng rng(seed * 3 + 0);
  auto add = [&](std::string n, Category<FinSet> x, bool fixture = true) {
    detail::add_category(part, std::move(n), std::move(x), b, fixture);
  };
  for (std::size_t n = 0; n <= 3; ++n) {
    add("disc" + std::to_string(n), disc(amb, FinSet::set(n)));
    add("codisc" + std::to_string(n), codisc(amb, FinSet::set(n)));
  }
  add("cech(0,0,1)", cech(amb, set_map(3, 2, {0, 0, 1})));
  add("arrow", detail::preorder_category(2, {{false, true}, {false, false}}));
  for (const auto& g : {groups::cyclic(2), groups::cyclic(3)}) {
    auto pt = FinSet::set(1);
    add("B" + g->label, detail::one_object(amb, pt, FinSet::set(g->order()), *g));
  }
  if (b.max_objects == 0) return part;

  std::size_t made = 0;
  for (std::size_t tries = 0; made < b.random_per_ambient && tries < 200; ++tries) {
    const std::size_t kind = rng.below(4);
    const std::size_t before = part.categories.size();
    if (kind == 0) {
      std::size_t n = 1 + rng.below(b.max_objects);
      std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
      for (auto& row : rel)
        for (std::size_t j = 0; j < n; ++j) row[j] = rng.coin(30);
      add("preorder#" + std::to_string(made), detail::preorder_category(n, rel), false);
    } else if (kind == 1) {
      std::size_t n = 1 + rng.below(b.max_objects);
      std::size_t m = 1 + rng.below(n);
      if (auto f = detail::random_arrow(amb, FinSet::set(n), FinSet::set(m), rng, true))
        add("cech#" + std::to_string(made), cech(amb, *f), false);
    } else if (kind == 2) {
      auto g = rng.coin(50) ? groups::cyclic(2) : groups::cyclic(3);
      std::size_t n = 1 + rng.below(std::min<std::size_t>(b.max_objects, 3));
      FinGSet gs(g);
      auto objs = gs.objects_up_to(n);
      std::vector<FinGSet::Object> exact;
      for (const auto& o : objs)
        if (o.size() == n) exact.push_back(o);
      if (!exact.empty())
        add("action#" + std::to_string(made), detail::action_groupoid(*g, exact[rng.below(exact.size())].act), false);
    } else {
      const auto& base = part.categories[rng.below(part.categories.size())].value;
      if (base.obj.size() == 0) continue;
      std::size_t m = base.obj.size() + rng.below(2);
      if (auto p = detail::random_arrow(amb, FinSet::set(m), base.obj, rng, false))
        add("baseChange#" + std::to_string(made), base_change(amb, base, *p), false);
    }
    if (part.categories.size() > before) ++made;
  }
  detail::derive_morphisms(part, b, rng);
  // Čech groupoids over their quotient, and cocycles into BZ2
  for (const auto& f : {set_map(3, 2, {0, 0, 1}), set_map(2, 1, {0, 0})})
    part.functors.push_back({"cechToDisc(" + std::to_string(f.dom.size()) + ")", detail::cech_to_disc(amb, f)});
  auto bz2 = detail::one_object(amb, FinSet::set(1), FinSet::set(2), *groups::cyclic(2));
  auto one = disc(amb, FinSet::set(1));
  std::size_t k = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto cover = to_terminal(amb, FinSet::set(n));
    auto xu = base_change(amb, one, cover);
    for (auto& f : all_functors(amb, xu, bz2))
      part.anafunctors.push_back({"cocycle#" + std::to_string(k++), Anafunctor<FinSet>{one, bz2, cover, f}});
  }
  return part;
}

inline CorpusPart<FinGrp> corpus_fingrp(std::uint64_t seed, const CorpusBounds& b) {
  FinGrp amb;
  CorpusPart<FinGrp> part{amb, "fingrp", surjections(amb, 8, "epi-grp"), {}, {}, {}};
  detail::Rng rng(seed * 3 + 1);
  auto add = [&](std::string n, Category<FinGrp> x, bool fixture = true) {
    detail::add_category(part, std::move(n), std::move(x), b, fixture);
  };
  auto z2 = FinGrp::of(groups::cyclic(2));
  auto z3 = FinGrp::of(groups::cyclic(3));
  auto z4 = FinGrp::of(groups::cyclic(4));
  add("disc(1)", disc(amb, amb.terminal()));
  add("disc(Z2)", disc(amb, z2));
  add("codisc(Z2)", codisc(amb, z2));
  add("codisc(Z3)", codisc(amb, z3));
  add("cech(Z4->Z2)", cech(amb, make_arrow(amb, z4, z2, {0, 1, 0, 1})));
  add("xmod(Z4->Z2)", xmod_to_groupoid(trivial_action_xmod(groups::cyclic(4), groups::cyclic(2), {0, 1, 0, 1})));
  add("xmod(id Z2)", xmod_to_groupoid(identity_xmod(groups::cyclic(2))));
  add("xmod(Z2->1)", xmod_to_groupoid(trivial_action_xmod(groups::cyclic(2), groups::trivial(), {0, 0})));
  if (b.max_objects == 0) return part;

  auto all = groups::all_up_to(std::min<std::size_t>(8, std::max<std::size_t>(b.max_arrows, 1)));
  std::size_t made = 0;
  for (std::size_t tries = 0; made < b.random_per_ambient && tries < 200; ++tries) {
    const std::size_t kind = rng.below(4);
    const std::size_t before = part.categories.size();
    const auto& g = all[rng.below(all.size())];
    auto go = FinGrp::of(g);
    if (kind == 0) {
      add("disc(" + g->label + ")#" + std::to_string(made), disc(amb, go), false);
    } else if (kind == 1) {
      add("codisc(" + g->label + ")#" + std::to_string(made), codisc(amb, go), false);
    } else if (kind == 2) {
      const auto& h = all[rng.below(all.size())];
      if (auto f = detail::random_arrow(amb, go, FinGrp::of(h), rng, true))
        add("cech(" + g->label + ")#" + std::to_string(made), cech(amb, *f), false);
    } else {
      const auto& base = part.categories[rng.below(part.categories.size())].value;
      if (auto p = detail::random_arrow(amb, go, base.obj, rng, false))
        add("baseChange#" + std::to_string(made), base_change(amb, base, *p), false);
    }
    if (part.categories.size() > before) ++made;
  }
  detail::derive_morphisms(part, b, rng);
  return part;
}

inline CorpusPart<FinGSet> corpus_fingset(std::uint64_t seed, const CorpusBounds& b) {
  FinGSet amb(groups::cyclic(2));
  CorpusPart<FinGSet> part{amb, "fingset:Z2", surjections(amb, 4), {}, {}, {}};
  detail::Rng rng(seed * 3 + 2);
  auto add = [&](std::string n, Category<FinGSet> x, bool fixture = true) {
    detail::add_category(part, std::move(n), std::move(x), b, fixture);
  };
  auto orbit = amb.regular();
  auto pt = amb.terminal();
  add("disc(pt)", disc(amb, pt));
  add("disc(Z2)", disc(amb, orbit));
  add("codisc(Z2)", codisc(amb, orbit));
  add("codisc(2)", codisc(amb, amb.trivial_action(2)));
  add("cech(Z2->pt)", cech(amb, to_terminal(amb, orbit)));
  if (b.max_objects == 0) return part;

  auto objs = amb.objects_up_to(std::min<std::size_t>(b.max_objects, 3));
  std::size_t made = 0;
  for (std::size_t tries = 0; made < b.random_per_ambient && tries < 200; ++tries) {
    const std::size_t kind = rng.below(4);
    const std::size_t before = part.categories.size();
    const auto& a = objs[rng.below(objs.size())];
    if (a.size() == 0) continue;
    if (kind == 0) {
      add("disc#" + std::to_string(made), disc(amb, a), false);
    } else if (kind == 1) {
      add("codisc#" + std::to_string(made), codisc(amb, a), false);
    } else if (kind == 2) {
      const auto& c = objs[rng.below(objs.size())];
      if (auto f = detail::random_arrow(amb, a, c, rng, true)) add("cech#" + std::to_string(made), cech(amb, *f), false);
    } else {
      const auto& base = part.categories[rng.below(part.categories.size())].value;
      if (auto p = detail::random_arrow(amb, a, base.obj, rng, false))
        add("baseChange#" + std::to_string(made), base_change(amb, base, *p), false);
    }
    if (part.categories.size() > before) ++made;
  }
  detail::derive_morphisms(part, b, rng);
  return part;
}

inline Corpus corpus_generate(std::uint64_t seed, const CorpusBounds& b = {}) {
  return Corpus{seed, b, corpus_finset(seed, b), corpus_fingrp(seed, b), corpus_fingset(seed, b)};
}

}  // namespace anacat
