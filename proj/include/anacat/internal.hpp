#pragma once

// Internal categories, functors and natural transformations in a finite
// ambient, with the standard constructions and the equivalence classifiers.
//
// Composable pairs live in the chosen pullback of (s, t): the pair (g, f)
// has s(g) = t(f) and m(g, f) is "g after f".

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anacat/ambient.hpp"
#include "anacat/report.hpp"
#include "anacat/sites.hpp"

namespace anacat {

template <Ambient S>
struct Category {
  using O = ObjectOf<S>;
  using A = ArrowOf<S>;

  O obj;
  O arr;
  A s, t, e;
  A m;  // composable pairs -> arr
  std::optional<A> inv;

  /// Structural equality of all data.
  bool operator==(const Category& o) const {
    return obj == o.obj && arr == o.arr && s == o.s && t == o.t && e == o.e && m == o.m && inv == o.inv;
  }

  const Pullback<O>& composable(const S& amb) const {
    if (cache && cache_s == s.table.data() && cache_t == t.table.data() && cache->left.table.size() == s.table.size() &&
        cache->right.table.size() == t.table.size())
      return *cache;
    if (!cache || !(cache->left == s) || !(cache->right == t))
      cache = std::make_shared<const Pullback<O>>(pullback(amb, s, t));
    cache_s = s.table.data();
    cache_t = t.table.data();
    return *cache;
  }

  Elem mul(const S& amb, Elem g, Elem f) const { return m.table[composable(amb).at(g, f)]; }

  mutable std::shared_ptr<const Pullback<O>> cache{};  // composable pairs
  mutable const Elem* cache_s = nullptr;
  mutable const Elem* cache_t = nullptr;
};

template <Ambient S>
struct Functor {
  Category<S> dom, cod;
  ArrowOf<S> f0, f1;

  bool operator==(const Functor& o) const { return dom == o.dom && cod == o.cod && f0 == o.f0 && f1 == o.f1; }
};

template <Ambient S>
struct NatTrans {
  Functor<S> src, tgt;
  ArrowOf<S> comp;  // dom.obj -> cod.arr

  bool operator==(const NatTrans& o) const { return src == o.src && tgt == o.tgt && comp == o.comp; }
};

namespace detail {

/// Builds an arrow element by element and checks it in the ambient.
template <Ambient S, class F>
ArrowOf<S> tabulate(const S& s, const ObjectOf<S>& dom, const ObjectOf<S>& cod, F&& fn) {
  std::vector<Elem> table(dom.size());
  for (Elem x = 0; x < dom.size(); ++x) table[x] = fn(x);
  return make_arrow(s, dom, cod, std::move(table));
}

template <Ambient S>
ArrowOf<S> diagonal(const S& s, const ObjectOf<S>& a) {
  return mediate(product(s, a, a), identity(a), identity(a));
}

/// (s, t) : X1 -> X0 x X0
template <Ambient S>
ArrowOf<S> source_target(const S& s, const Category<S>& x) {
  return mediate(product(s, x.obj, x.obj), x.s, x.t);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Validation

template <Ambient S>
VerificationReport validate_category(const S& amb, const Category<S>& x) {
  VerificationReport r("category", 0);
  auto shape = [&](const ArrowOf<S>& f, const ObjectOf<S>& d, const ObjectOf<S>& c, const char* name) {
    bool ok = f.dom == d && f.cod == c && f.table.size() == d.size() &&
              std::all_of(f.table.begin(), f.table.end(), [&](Elem y) { return y < c.size(); }) &&
              amb.is_morphism(f.dom, f.cod, f.table);
    return r.expect(ok, std::string("structure map ") + name + " is malformed");
  };
  if (!shape(x.s, x.arr, x.obj, "s") || !shape(x.t, x.arr, x.obj, "t") || !shape(x.e, x.obj, x.arr, "e")) return r;
  const auto& c = x.composable(amb);
  if (!shape(x.m, c.apex, x.arr, "m")) return r;
  for (Elem a = 0; a < x.obj.size(); ++a) {
    if (!r.check(x.s(x.e(a)) == a && x.t(x.e(a)) == a, "unit has wrong source or target", [&] { return json{{"object", a}}; }))
      return r;
  }
  for (Elem k = 0; k < c.size(); ++k) {
    auto [g, f] = c.pairs[k];
    Elem gf = x.m.table[k];
    if (!r.check(x.s(gf) == x.s(f) && x.t(gf) == x.t(g), "composite has wrong source or target", [&] { return json{{"g", g}, {"f", f}, {"gf", gf}}; }))
      return r;
  }
  for (Elem f = 0; f < x.arr.size(); ++f) {
    if (!r.check(x.mul(amb, x.e(x.t(f)), f) == f && x.mul(amb, f, x.e(x.s(f))) == f, "unit law fails", [&] { return json{{"arrow", f}}; }))
      return r;
  }
  for (auto [h, g] : c.pairs)
    for (Elem f = 0; f < x.arr.size(); ++f) {
      if (x.s(g) != x.t(f)) continue;
      Elem left = x.mul(amb, x.mul(amb, h, g), f);
      Elem right = x.mul(amb, h, x.mul(amb, g, f));
      if (!r.check(left == right, "multiplication is not associative", [&] { return json{{"h", h}, {"g", g}, {"f", f}}; })) return r;
    }
  if (x.inv) {
    const auto& i = *x.inv;
    if (!shape(i, x.arr, x.arr, "inv")) return r;
    for (Elem g = 0; g < x.arr.size(); ++g) {
      Elem gi = i(g);
      bool ok = x.s(gi) == x.t(g) && x.t(gi) == x.s(g) && x.mul(amb, gi, g) == x.e(x.s(g)) &&
                x.mul(amb, g, gi) == x.e(x.t(g));
      if (!r.check(ok, "inverse law fails", [&] { return json{{"arrow", g}}; })) return r;
    }
  }
  return r;
}

/// Elements of X1 with a two-sided inverse, in increasing order.
template <Ambient S>
std::vector<Elem> invertible_arrows(const S& amb, const Category<S>& x) {
  std::vector<Elem> out;
  for (Elem g = 0; g < x.arr.size(); ++g) {
    for (Elem h = 0; h < x.arr.size(); ++h) {
      if (x.s(h) != x.t(g) || x.t(h) != x.s(g)) continue;
      if (x.mul(amb, h, g) == x.e(x.s(g)) && x.mul(amb, g, h) == x.e(x.t(g))) {
        out.push_back(g);
        break;
      }
    }
  }
  return out;
}

/// The two-sided inverse of an invertible arrow.
template <Ambient S>
std::optional<Elem> find_inverse(const S& amb, const Category<S>& x, Elem g) {
  if (x.inv) return (*x.inv)(g);
  for (Elem h = 0; h < x.arr.size(); ++h)
    if (x.s(h) == x.t(g) && x.t(h) == x.s(g) && x.mul(amb, h, g) == x.e(x.s(g)) && x.mul(amb, g, h) == x.e(x.t(g)))
      return h;
  return std::nullopt;
}

template <Ambient S>
Elem inverse_of(const S& amb, const Category<S>& x, Elem g) {
  if (auto h = find_inverse(amb, x, g)) return *h;
  throw Error(ErrorKind::not_iso, "arrow " + std::to_string(g) + " has no inverse");
}

/// The inclusion X1^iso -> X1.
template <Ambient S>
ArrowOf<S> iso_arrows(const S& amb, const Category<S>& x) {
  if (x.inv) return identity(x.arr);
  return inclusion(amb, x.arr, invertible_arrows(amb, x));
}

/// X with its inversion map filled in, if every arrow is invertible.
template <Ambient S>
Category<S> as_groupoid(const S& amb, Category<S> x) {
  if (x.inv) return x;
  const Category<S>& cx = x;
  auto inv = detail::tabulate(amb, x.arr, x.arr, [&](Elem g) { return inverse_of(amb, cx, g); });
  x.inv = std::move(inv);
  return x;
}

template <Ambient S>
VerificationReport validate_groupoid(const S& amb, const Category<S>& x) {
  VerificationReport r = validate_category(amb, x);
  r.law = "groupoid";
  if (!r.passed()) return r;
  if (!x.inv) {
    try {
      return validate_groupoid(amb, as_groupoid(amb, x));
    } catch (const Error& err) {
      r.fail(err.what());
    }
  }
  return r;
}

template <Ambient S>
VerificationReport validate_functor(const S& amb, const Functor<S>& f) {
  VerificationReport r("functor", 0);
  const auto& x = f.dom;
  const auto& y = f.cod;
  bool shape = f.f0.dom == x.obj && f.f0.cod == y.obj && f.f1.dom == x.arr && f.f1.cod == y.arr &&
               f.f0.table.size() == x.obj.size() && f.f1.table.size() == x.arr.size() &&
               amb.is_morphism(f.f0.dom, f.f0.cod, f.f0.table) && amb.is_morphism(f.f1.dom, f.f1.cod, f.f1.table);
  if (!r.expect(shape, "components are malformed")) return r;
  for (Elem g = 0; g < x.arr.size(); ++g) {
    bool ok = y.s(f.f1(g)) == f.f0(x.s(g)) && y.t(f.f1(g)) == f.f0(x.t(g));
    if (!r.check(ok, "arrow component does not commute with source/target", [&] { return json{{"arrow", g}}; })) return r;
  }
  for (Elem a = 0; a < x.obj.size(); ++a)
    if (!r.check(f.f1(x.e(a)) == y.e(f.f0(a)), "units are not preserved", [&] { return json{{"object", a}}; })) return r;
  for (auto [g, h] : x.composable(amb).pairs) {
    bool ok = f.f1(x.mul(amb, g, h)) == y.mul(amb, f.f1(g), f.f1(h));
    if (!r.check(ok, "composition is not preserved", [&] { return json{{"g", g}, {"f", h}}; })) return r;
  }
  return r;
}

template <Ambient S>
VerificationReport validate_transformation(const S& amb, const NatTrans<S>& a) {
  VerificationReport r("transformation", 0);
  const auto& f = a.src;
  const auto& g = a.tgt;
  if (!r.expect(f.dom == g.dom && f.cod == g.cod, "functors are not parallel")) return r;
  const auto& x = f.dom;
  const auto& y = f.cod;
  bool shape = a.comp.dom == x.obj && a.comp.cod == y.arr && a.comp.table.size() == x.obj.size() &&
               amb.is_morphism(a.comp.dom, a.comp.cod, a.comp.table);
  if (!r.expect(shape, "component is malformed")) return r;
  for (Elem o = 0; o < x.obj.size(); ++o) {
    bool ok = y.s(a.comp(o)) == f.f0(o) && y.t(a.comp(o)) == g.f0(o);
    if (!r.check(ok, "component has wrong source or target", [&] { return json{{"object", o}}; })) return r;
  }
  for (Elem h = 0; h < x.arr.size(); ++h) {
    Elem left = y.mul(amb, g.f1(h), a.comp(x.s(h)));
    Elem right = y.mul(amb, a.comp(x.t(h)), f.f1(h));
    if (!r.check(left == right, "naturality square does not commute", [&] { return json{{"arrow", h}}; })) return r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Constructions

template <Ambient S>
Category<S> disc(const S& amb, const ObjectOf<S>& a) {
  auto id = identity(a);
  auto c = pullback(amb, id, id);
  return Category<S>{a, a, id, id, id, ArrowOf<S>{c.apex, a, elements(c.apex)}, id};
}

template <Ambient S>
Category<S> codisc(const S& amb, const ObjectOf<S>& a) {
  auto sq = product(amb, a, a);
  Category<S> x{a, sq.apex, sq.p1, sq.p2, mediate(sq, identity(a), identity(a)), {}, mediate(sq, sq.p2, sq.p1)};
  const auto& c = x.composable(amb);
  x.m = mediate(sq, compose(x.s, c.p2), compose(x.t, c.p1));
  return x;
}

/// The Čech groupoid of f: objects dom f, arrows the kernel pair.
template <Ambient S>
Category<S> cech(const S& amb, const ArrowOf<S>& f) {
  auto kp = kernel_pair(amb, f);
  Category<S> x{f.dom, kp.apex, kp.p1, kp.p2, mediate(kp, identity(f.dom), identity(f.dom)), {},
                mediate(kp, kp.p2, kp.p1)};
  const auto& c = x.composable(amb);
  x.m = mediate(kp, compose(x.s, c.p2), compose(x.t, c.p1));
  return x;
}

/// Arrows of X[M]: the chosen pullback of p x p : M^2 -> X0^2 and (s, t).
template <Ambient S>
struct BaseChange {
  Category<S> cat;
  ArrowOf<S> p;
  Pullback<ObjectOf<S>> square;  // M^2 x_{X0^2} X1
  Pullback<ObjectOf<S>> m2;      // M x M
};

template <Ambient S>
BaseChange<S> base_change_data(const S& amb, const Category<S>& x, const ArrowOf<S>& p) {
  if (!(p.cod == x.obj)) throw Error(ErrorKind::domain_mismatch, "base change: map does not land in the objects");
  const auto& mo = p.dom;
  auto m2 = product(amb, mo, mo);
  auto pp = product_map(amb, p, p);
  auto st = detail::source_target(amb, x);
  auto sq = pullback(amb, pp, st);
  Category<S> out{mo, sq.apex, compose(m2.p1, sq.p1), compose(m2.p2, sq.p1), {}, {}, std::nullopt};
  out.e = mediate(sq, detail::diagonal(amb, mo), compose(x.e, p));
  const auto& c = out.composable(amb);
  const auto& cx = x.composable(amb);
  auto ends = mediate(m2, compose(out.s, c.p2), compose(out.t, c.p1));
  auto inner = compose(x.m, mediate(cx, compose(sq.p2, c.p1), compose(sq.p2, c.p2)));
  out.m = mediate(sq, ends, inner);
  if (x.inv) out.inv = mediate(sq, mediate(m2, out.t, out.s), compose(*x.inv, sq.p2));
  return {std::move(out), p, std::move(sq), std::move(m2)};
}

template <Ambient S>
Category<S> base_change(const S& amb, const Category<S>& x, const ArrowOf<S>& p) {
  return base_change_data(amb, x, p).cat;
}

/// The canonical functor X[M] -> X.
template <Ambient S>
Functor<S> base_change_functor(const S& amb, const Category<S>& x, const ArrowOf<S>& p) {
  auto bc = base_change_data(amb, x, p);
  return Functor<S>{bc.cat, x, p, bc.square.p2};
}

template <Ambient S>
Functor<S> identity_functor(const Category<S>& x) {
  return Functor<S>{x, x, identity(x.obj), identity(x.arr)};
}

template <Ambient S>
Functor<S> compose_functors(const Functor<S>& g, const Functor<S>& f) {
  if (!(f.cod == g.dom)) throw Error(ErrorKind::domain_mismatch, "compose_functors: cod(f) != dom(g)");
  return Functor<S>{f.dom, g.cod, compose(g.f0, f.f0), compose(g.f1, f.f1)};
}

/// The canonical iso X[M][N] -> X[N] over the composite N -> M -> X0, with
/// identity object component.
template <Ambient S>
Functor<S> base_change_coherence(const S& amb, const Category<S>& x, const ArrowOf<S>& q, const ArrowOf<S>& p) {
  auto xm = base_change_data(amb, x, p);
  auto xmn = base_change_data(amb, xm.cat, q);
  auto xn = base_change_data(amb, x, compose(p, q));
  auto f1 = mediate(xn.square, xmn.square.p1, compose(xm.square.p2, xmn.square.p2));
  return Functor<S>{xmn.cat, xn.cat, identity(q.dom), f1};
}

template <Ambient S>
struct StrictPullback {
  Category<S> cat;
  Functor<S> p1, p2;
};

/// Componentwise pullback of f : X -> Z and g : Y -> Z.
template <Ambient S>
StrictPullback<S> strict_pullback(const S& amb, const Functor<S>& f, const Functor<S>& g) {
  if (!(f.cod == g.cod)) throw Error(ErrorKind::domain_mismatch, "strict pullback: functors have different codomains");
  const auto& x = f.dom;
  const auto& y = g.dom;
  auto ob = pullback(amb, f.f0, g.f0);
  auto ar = pullback(amb, f.f1, g.f1);
  Category<S> p{ob.apex, ar.apex, mediate(ob, compose(x.s, ar.p1), compose(y.s, ar.p2)),
                mediate(ob, compose(x.t, ar.p1), compose(y.t, ar.p2)),
                mediate(ar, compose(x.e, ob.p1), compose(y.e, ob.p2)), {}, std::nullopt};
  const auto& c = p.composable(amb);
  auto mx = compose(x.m, mediate(x.composable(amb), compose(ar.p1, c.p1), compose(ar.p1, c.p2)));
  auto my = compose(y.m, mediate(y.composable(amb), compose(ar.p2, c.p1), compose(ar.p2, c.p2)));
  p.m = mediate(ar, mx, my);
  if (x.inv && y.inv) p.inv = mediate(ar, compose(*x.inv, ar.p1), compose(*y.inv, ar.p2));
  Functor<S> q1{p, x, ob.p1, ar.p1};
  Functor<S> q2{p, y, ob.p2, ar.p2};
  return {std::move(p), std::move(q1), std::move(q2)};
}

/// disc(X0) -> X and X -> codisc(X0).
template <Ambient S>
Functor<S> from_disc(const S& amb, const Category<S>& x) {
  return Functor<S>{disc(amb, x.obj), x, identity(x.obj), x.e};
}

template <Ambient S>
Functor<S> to_codisc(const S& amb, const Category<S>& x) {
  return Functor<S>{x, codisc(amb, x.obj), identity(x.obj), detail::source_target(amb, x)};
}

// ---------------------------------------------------------------------------
// Transformations

template <Ambient S>
NatTrans<S> identity_nat(const Functor<S>& f) {
  return NatTrans<S>{f, f, compose(f.cod.e, f.f0)};
}

/// b . a for a : f => g and b : g => h.
template <Ambient S>
NatTrans<S> vcomp_nat(const S& amb, const NatTrans<S>& a, const NatTrans<S>& b) {
  if (!(a.tgt == b.src)) throw Error(ErrorKind::domain_mismatch, "vcomp_nat: transformations do not compose");
  const auto& y = a.src.cod;
  return NatTrans<S>{a.src, b.tgt, compose(y.m, mediate(y.composable(amb), b.comp, a.comp))};
}

/// a f : g f => h f for a : g => h.
template <Ambient S>
NatTrans<S> whisker(const Functor<S>& f, const NatTrans<S>& a) {
  return NatTrans<S>{compose_functors(a.src, f), compose_functors(a.tgt, f), compose(a.comp, f.f0)};
}

/// k a : k g => k h for a : g => h.
template <Ambient S>
NatTrans<S> whisker(const NatTrans<S>& a, const Functor<S>& k) {
  return NatTrans<S>{compose_functors(k, a.src), compose_functors(k, a.tgt), compose(k.f1, a.comp)};
}

template <Ambient S>
NatTrans<S> invert_nat_iso(const S& amb, const NatTrans<S>& a) {
  const auto& y = a.src.cod;
  auto comp = detail::tabulate(amb, a.comp.dom, a.comp.cod, [&](Elem o) { return inverse_of(amb, y, a.comp(o)); });
  return NatTrans<S>{a.tgt, a.src, std::move(comp)};
}

template <Ambient S>
bool is_nat_iso(const S& amb, const NatTrans<S>& a) {
  const auto& y = a.src.cod;
  for (Elem c : a.comp.table)
    if (!find_inverse(amb, y, c)) return false;
  return true;
}

/// The transformation between two functors into a codiscrete category.
template <Ambient S>
NatTrans<S> codisc_transformation(const S& amb, const Functor<S>& f, const Functor<S>& g) {
  auto sq = product(amb, f.cod.obj, f.cod.obj);
  if (!(f.cod.arr == sq.apex)) throw Error(ErrorKind::precondition, "codomain is not codiscrete");
  return NatTrans<S>{f, g, mediate(sq, f.f0, g.f0)};
}

// ---------------------------------------------------------------------------
// Classifiers

template <Ambient S>
struct FullyFaithfulData {
  bool fully_faithful = false;
  Pullback<ObjectOf<S>> square;  // (X0 x X0) x_{Y0 x Y0} Y1
  ArrowOf<S> comparison;         // X1 -> square
  Pullback<ObjectOf<S>> x2;      // X0 x X0
};

template <Ambient S>
FullyFaithfulData<S> fully_faithful_data(const S& amb, const Functor<S>& f) {
  auto ff = product_map(amb, f.f0, f.f0);
  auto sq = pullback(amb, ff, detail::source_target(amb, f.cod));
  auto x2 = product(amb, f.dom.obj, f.dom.obj);
  auto cmp = mediate(sq, mediate(x2, f.dom.s, f.dom.t), f.f1);
  bool iso = is_iso(cmp);
  return {iso, std::move(sq), std::move(cmp), std::move(x2)};
}

template <Ambient S>
bool is_fully_faithful(const S& amb, const Functor<S>& f) {
  return fully_faithful_data(amb, f).fully_faithful;
}

/// The unique arrow a -> b of X over the arrow y : f(a) -> f(b) of Y.
template <Ambient S>
Elem ff_preimage(const S& amb, const Functor<S>& f, const FullyFaithfulData<S>& d, Elem a, Elem b, Elem y) {
  (void)amb;
  (void)f;
  auto k = d.square.find(d.x2.at(a, b), y);
  if (!k) throw Error(ErrorKind::precondition, "no arrow of Y over the given pair of objects");
  for (Elem g = 0; g < d.comparison.table.size(); ++g)
    if (d.comparison.table[g] == *k) return g;
  throw Error(ErrorKind::precondition, "functor is not full");
}

/// X0 x_{Y0} Y1^iso with its map t . pr2 to Y0.
template <Ambient S>
struct EssentialImage {
  ArrowOf<S> iso;  // Y1^iso -> Y1
  Pullback<ObjectOf<S>> pb;  // pullback of f0 and s . iso
  ArrowOf<S> star;           // pb.apex -> Y0
};

template <Ambient S>
EssentialImage<S> essential_image(const S& amb, const Functor<S>& f) {
  auto iso = iso_arrows(amb, f.cod);
  auto pb = pullback(amb, f.f0, compose(f.cod.s, iso));
  auto star = compose(f.cod.t, compose(iso, pb.p2));
  return {std::move(iso), std::move(pb), std::move(star)};
}

template <Ambient S>
bool is_essentially_J_surjective(const S& amb, const Functor<S>& f, const Pretopology<S>& j) {
  return j.contains(essential_image(amb, f).star);
}

/// A cover U -> Y0, a functor Y[U] -> X and a natural iso from its composite
/// with f to the canonical functor Y[U] -> Y.
template <Ambient S>
struct LocalSplitting {
  ArrowOf<S> cover;
  Functor<S> section;    // Y[U] -> X
  Functor<S> canonical;  // Y[U] -> Y
  NatTrans<S> iota;      // f . section => canonical
};

/// The splitting induced by a lift l : U -> X0 x_{Y0} Y1^iso of the cover
/// through t . pr2. Requires f fully faithful.
template <Ambient S>
LocalSplitting<S> splitting_from_lift(const S& amb, const Functor<S>& f, const EssentialImage<S>& ei,
                                      const ArrowOf<S>& cover, const ArrowOf<S>& lift) {
  auto ffd = fully_faithful_data(amb, f);
  if (!ffd.fully_faithful) throw Error(ErrorKind::precondition, "local splitting needs a fully faithful functor");
  const auto& y = f.cod;
  auto bc = base_change_data(amb, y, cover);
  auto s0 = compose(ei.pb.p1, lift);
  auto iota = compose(ei.iso, compose(ei.pb.p2, lift));
  const auto& yu = bc.cat;
  auto s1 = detail::tabulate(amb, yu.arr, f.dom.arr, [&](Elem a) {
    auto [uu, g] = bc.square.pairs[a];
    auto [u, v] = bc.m2.pairs[uu];
    Elem phi = iota(u), psi = iota(v);
    Elem back = y.mul(amb, inverse_of(amb, y, psi), y.mul(amb, g, phi));
    return ff_preimage(amb, f, ffd, s0(u), s0(v), back);
  });
  Functor<S> section{yu, f.dom, s0, s1};
  Functor<S> canonical{yu, y, cover, bc.square.p2};
  NatTrans<S> nat{compose_functors(f, section), canonical, iota};
  return {cover, std::move(section), std::move(canonical), std::move(nat)};
}

template <Ambient S>
LocalSplitting<S> construct_local_splitting(const S& amb, const Functor<S>& f, const Pretopology<S>& j) {
  if (!is_fully_faithful(amb, f)) throw Error(ErrorKind::precondition, "functor is not fully faithful");
  auto ei = essential_image(amb, f);
  if (!j.contains(ei.star)) throw Error(ErrorKind::precondition, "functor is not essentially J-surjective");
  return splitting_from_lift(amb, f, ei, ei.star, identity(ei.star.dom));
}

/// The splitting over the cover f0 itself; any J containing f0 makes a
/// fully faithful f locally split this way.
template <Ambient S>
LocalSplitting<S> splitting_on_objects(const S& amb, const Functor<S>& f) {
  auto ei = essential_image(amb, f);
  auto lift = detail::tabulate(amb, f.dom.obj, ei.pb.apex, [&](Elem a) {
    Elem unit = f.cod.e(f.f0(a));
    auto it = std::find(ei.iso.table.begin(), ei.iso.table.end(), unit);
    return ei.pb.at(a, static_cast<Elem>(it - ei.iso.table.begin()));
  });
  return splitting_from_lift(amb, f, ei, f.f0, lift);
}

enum class Verdict { yes, no, unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::unknown: return "not-found-within-bound";
  }
  return "unknown";
}

template <Ambient S>
struct EquivalenceResult {
  Verdict verdict = Verdict::no;
  std::string route;  // "canonical" or "generator"
  std::optional<LocalSplitting<S>> witness;
  explicit operator bool() const { return verdict == Verdict::yes; }
};

/// Fully faithful and J-locally split. The canonical cover is tried first,
/// then every generator cover of Y0 is tested for a lift through t . pr2.
/// Without a hit the verdict is `no` when J is known saturated, `unknown`
/// otherwise.
template <Ambient S>
EquivalenceResult<S> is_J_equivalence(const S& amb, const Functor<S>& f, const Pretopology<S>& j,
                                      bool j_saturated = false) {
  EquivalenceResult<S> out;
  if (!is_fully_faithful(amb, f)) return out;
  auto ei = essential_image(amb, f);
  if (j.contains(ei.star)) {
    out.verdict = Verdict::yes;
    out.route = "canonical";
    out.witness = splitting_from_lift(amb, f, ei, ei.star, identity(ei.star.dom));
    return out;
  }
  for (const auto& c : j.generators(f.cod.obj)) {
    if (auto l = find_lift(amb, c, ei.star)) {
      out.verdict = Verdict::yes;
      out.route = "generator";
      out.witness = splitting_from_lift(amb, f, ei, c, *l);
      return out;
    }
  }
  out.verdict = j_saturated ? Verdict::no : Verdict::unknown;
  return out;
}

/// Every functor Z -> X, by search over object and arrow components.
template <Ambient S>
std::vector<Functor<S>> all_functors(const S& amb, const Category<S>& z, const Category<S>& x) {
  std::vector<Functor<S>> out;
  search_arrows(amb, z.obj, x.obj, {}, [&](const ArrowOf<S>& f0) {
    std::vector<std::vector<Elem>> cand(z.arr.size());
    for (Elem g = 0; g < z.arr.size(); ++g)
      for (Elem h = 0; h < x.arr.size(); ++h)
        if (x.s(h) == f0(z.s(g)) && x.t(h) == f0(z.t(g))) cand[g].push_back(h);
    search_arrows(amb, z.arr, x.arr, cand, [&](const ArrowOf<S>& f1) {
      Functor<S> f{z, x, f0, f1};
      if (validate_functor(amb, f).passed()) out.push_back(std::move(f));
      return true;
    });
    return true;
  });
  return out;
}

/// Every transformation f => g.
template <Ambient S>
std::vector<NatTrans<S>> all_transformations(const S& amb, const Functor<S>& f, const Functor<S>& g) {
  std::vector<NatTrans<S>> out;
  const auto& y = f.cod;
  std::vector<std::vector<Elem>> cand(f.dom.obj.size());
  for (Elem o = 0; o < f.dom.obj.size(); ++o)
    for (Elem h = 0; h < y.arr.size(); ++h)
      if (y.s(h) == f.f0(o) && y.t(h) == g.f0(o)) cand[o].push_back(h);
  search_arrows(amb, f.dom.obj, y.arr, cand, [&](const ArrowOf<S>& c) {
    NatTrans<S> a{f, g, c};
    if (validate_transformation(amb, a).passed()) out.push_back(std::move(a));
    return true;
  });
  return out;
}

}  // namespace anacat
