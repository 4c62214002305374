#pragma once

// Anafunctors and their transformations.

#include <optional>
#include <string>
#include <vector>

#include "anacat/internal.hpp"

namespace anacat {

/// A cover U -> X0 together with a functor X[U] -> Y.
template <Ambient S>
struct Anafunctor {
  Category<S> src, tgt;
  ArrowOf<S> cover;
  Functor<S> functor;

  bool operator==(const Anafunctor& o) const {
    return src == o.src && tgt == o.tgt && cover == o.cover && functor == o.functor;
  }
};

/// Component U x_{X0} V -> Y1 of a transformation (U, f) => (V, g).
template <Ambient S>
struct AnaTransformation {
  Anafunctor<S> src, tgt;
  ArrowOf<S> comp;

  bool operator==(const AnaTransformation& o) const { return src == o.src && tgt == o.tgt && comp == o.comp; }
};

/// The functor X[V] -> X[U] induced by k : V -> U over X0.
template <Ambient S>
Functor<S> reindex(const S& amb, const Category<S>& x, const ArrowOf<S>& u, const ArrowOf<S>& k) {
  auto bu = base_change_data(amb, x, u);
  auto bv = base_change_data(amb, x, compose(u, k));
  auto kk = product_map(amb, k, k);
  auto f1 = mediate(bu.square, compose(kk, bv.square.p1), bv.square.p2);
  return Functor<S>{bv.cat, bu.cat, k, f1};
}

template <Ambient S>
Anafunctor<S> from_functor(const Functor<S>& f) {
  return Anafunctor<S>{f.dom, f.cod, identity(f.dom.obj), f};
}

template <Ambient S>
Anafunctor<S> identity_ana(const Category<S>& x) {
  return from_functor(identity_functor(x));
}

template <Ambient S>
Anafunctor<S> alpha_J(const Functor<S>& f) {
  return from_functor(f);
}

template <Ambient S>
VerificationReport validate_anafunctor(const S& amb, const Anafunctor<S>& f, const Pretopology<S>& j) {
  VerificationReport r("anafunctor", 0);
  if (!r.expect(f.cover.cod == f.src.obj, "cover does not land in the objects")) return r;
  if (!r.expect(j.contains(f.cover), "cover is not in " + j.name, {{"cover", arrow_json(f.cover)}})) return r;
  if (!r.expect(f.functor.dom == base_change(amb, f.src, f.cover), "functor is not defined on the base change"))
    return r;
  if (!r.expect(f.functor.cod == f.tgt, "functor lands in the wrong category")) return r;
  r.absorb(validate_functor(amb, f.functor));
  return r;
}

/// The two functors X[U x_{X0} V] -> Y compared by a transformation.
template <Ambient S>
struct TransformationFrame {
  Pullback<ObjectOf<S>> uv;
  Functor<S> left, right;
};

template <Ambient S>
TransformationFrame<S> transformation_frame(const S& amb, const Anafunctor<S>& f, const Anafunctor<S>& g) {
  if (!(f.src == g.src) || !(f.tgt == g.tgt))
    throw Error(ErrorKind::domain_mismatch, "anafunctors are not parallel");
  auto uv = pullback(amb, f.cover, g.cover);
  auto left = compose_functors(f.functor, reindex(amb, f.src, f.cover, uv.p1));
  auto right = compose_functors(g.functor, reindex(amb, g.src, g.cover, uv.p2));
  return {std::move(uv), std::move(left), std::move(right)};
}

template <Ambient S>
NatTrans<S> underlying_nat(const S& amb, const AnaTransformation<S>& a) {
  auto fr = transformation_frame(amb, a.src, a.tgt);
  return NatTrans<S>{fr.left, fr.right, a.comp};
}

template <Ambient S>
VerificationReport validate_ana_transformation(const S& amb, const AnaTransformation<S>& a) {
  VerificationReport r("ana-transformation", 0);
  try {
    auto fr = transformation_frame(amb, a.src, a.tgt);
    if (!r.expect(a.comp.dom == fr.uv.apex, "component is not defined on the joint cover")) return r;
    r.absorb(validate_transformation(amb, NatTrans<S>{fr.left, fr.right, a.comp}));
  } catch (const Error& e) {
    r.fail(e.what());
  }
  return r;
}

/// Every transformation F => G, by search over component tables.
template <Ambient S>
std::vector<AnaTransformation<S>> all_ana_transformations(const S& amb, const Anafunctor<S>& f,
                                                          const Anafunctor<S>& g) {
  auto fr = transformation_frame(amb, f, g);
  std::vector<AnaTransformation<S>> out;
  for (auto& a : all_transformations(amb, fr.left, fr.right)) out.push_back(AnaTransformation<S>{f, g, a.comp});
  return out;
}

template <Ambient S>
bool is_isotransformation(const S& amb, const AnaTransformation<S>& a) {
  return validate_ana_transformation(amb, a).passed() && is_nat_iso(amb, underlying_nat(amb, a));
}

// ---------------------------------------------------------------------------
// Composition

/// (V, g) . (U, f) = (U x_{Y0} V, g . f^V).
template <Ambient S>
Anafunctor<S> compose_ana(const S& amb, const Anafunctor<S>& f, const Anafunctor<S>& g) {
  if (!(f.tgt == g.src)) throw Error(ErrorKind::domain_mismatch, "compose_ana: middle categories differ");
  const auto& x = f.src;
  const auto& y = f.tgt;
  auto p = pullback(amb, f.functor.f0, g.cover);
  auto cover = compose(f.cover, p.p1);
  auto bx = base_change_data(amb, x, cover);
  auto by = base_change_data(amb, y, g.cover);
  auto back = reindex(amb, x, f.cover, p.p1);
  auto f1 = mediate(by.square, compose(product_map(amb, p.p2, p.p2), bx.square.p1), compose(f.functor.f1, back.f1));
  Functor<S> fv{bx.cat, by.cat, p.p2, f1};
  return Anafunctor<S>{x, g.tgt, cover, compose_functors(g.functor, fv)};
}

// ---------------------------------------------------------------------------
// Transformations

template <Ambient S>
AnaTransformation<S> identity_transformation(const S& amb, const Anafunctor<S>& f) {
  const auto& x = f.src;
  auto bu = base_change_data(amb, x, f.cover);
  auto uu = pullback(amb, f.cover, f.cover);
  auto to_arrows = mediate(bu.square, mediate(bu.m2, uu.p1, uu.p2), compose(x.e, compose(f.cover, uu.p1)));
  return AnaTransformation<S>{f, f, compose(f.functor.f1, to_arrows)};
}

/// (U, f) => (V, f . k^) for k : V -> U over X0.
template <Ambient S>
AnaTransformation<S> renaming_transformation(const S& amb, const Anafunctor<S>& f, const ArrowOf<S>& k) {
  if (!(k.cod == f.cover.dom)) throw Error(ErrorKind::domain_mismatch, "renaming map does not land in the cover");
  auto v = compose(f.cover, k);
  Anafunctor<S> g{f.src, f.tgt, v, compose_functors(f.functor, reindex(amb, f.src, f.cover, k))};
  auto ident = identity_transformation(amb, f);
  auto uu = pullback(amb, f.cover, f.cover);
  auto uv = pullback(amb, f.cover, v);
  auto comp = compose(ident.comp, mediate(uu, uv.p1, compose(k, uv.p2)));
  AnaTransformation<S> out{f, std::move(g), std::move(comp)};
  auto r = validate_ana_transformation(amb, out);
  if (!r.passed()) throw Error(ErrorKind::validation, "renaming transformation: " + r.detail);
  return out;
}

template <Ambient S>
AnaTransformation<S> alpha_J(const S& amb, const NatTrans<S>& a) {
  (void)amb;
  return AnaTransformation<S>{from_functor(a.src), from_functor(a.tgt), a.comp};
}

/// Inverse of an isotransformation, with component on V x_{X0} U.
template <Ambient S>
AnaTransformation<S> invert_transformation(const S& amb, const AnaTransformation<S>& a) {
  const auto& y = a.src.tgt;
  auto uv = pullback(amb, a.src.cover, a.tgt.cover);
  auto vu = pullback(amb, a.tgt.cover, a.src.cover);
  auto comp = detail::tabulate(amb, vu.apex, y.arr, [&](Elem k) {
    auto [v, u] = vu.pairs[k];
    return inverse_of(amb, y, a.comp(uv.at(u, v)));
  });
  return AnaTransformation<S>{a.tgt, a.src, std::move(comp)};
}

/// Data of a vertical composite: the local component on U x V x W and the
/// projection to U x W along which it descends.
template <Ambient S>
struct VcompData {
  Pullback<ObjectOf<S>> uvw;  // (U x V) x W
  Pullback<ObjectOf<S>> uw;
  ArrowOf<S> local;       // uvw -> Y1
  ArrowOf<S> projection;  // uvw -> uw
};

template <Ambient S>
VcompData<S> vcomp_data(const S& amb, const AnaTransformation<S>& a, const AnaTransformation<S>& b) {
  if (!(a.tgt == b.src)) throw Error(ErrorKind::domain_mismatch, "vcomp: transformations do not compose");
  const auto& y = a.src.tgt;
  const auto &u = a.src.cover, &v = a.tgt.cover, &w = b.tgt.cover;
  auto uv = pullback(amb, u, v);
  auto vw = pullback(amb, v, w);
  auto uvw = pullback(amb, compose(u, uv.p1), w);
  auto uw = pullback(amb, u, w);
  auto a_part = compose(a.comp, uvw.p1);
  auto b_part = compose(b.comp, mediate(vw, compose(uv.p2, uvw.p1), uvw.p2));
  auto local = compose(y.m, mediate(y.composable(amb), b_part, a_part));
  auto proj = mediate(uw, compose(uv.p1, uvw.p1), uvw.p2);
  return {std::move(uvw), std::move(uw), std::move(local), std::move(proj)};
}

/// b . a, obtained by descending the local component along UVW -> UW after
/// checking the cocycle condition. When the projection splits, the section
/// shortcut is computed as well and must agree.
template <Ambient S>
AnaTransformation<S> vcomp_trans(const S& amb, const AnaTransformation<S>& a, const AnaTransformation<S>& b) {
  auto d = vcomp_data(amb, a, b);
  auto kp = kernel_pair(amb, d.projection);
  if (!(compose(d.local, kp.p1) == compose(d.local, kp.p2)))
    throw Error(ErrorKind::cocycle, "vcomp: local component is not constant on the fibres of UVW -> UW");
  auto comp = descend(amb, d.projection, d.local);
  if (auto sec = find_section(amb, d.projection)) {
    if (!(compose(d.local, *sec) == comp))
      throw Error(ErrorKind::cocycle, "vcomp: section shortcut disagrees with descent");
  }
  return AnaTransformation<S>{a.src, b.tgt, std::move(comp)};
}

/// The renaming isomorphism (HG)F => H(GF) along (U x V) x W -> U x (V x W).
template <Ambient S>
AnaTransformation<S> associator(const S& amb, const Anafunctor<S>& f, const Anafunctor<S>& g,
                                const Anafunctor<S>& h) {
  auto left = compose_ana(amb, f, compose_ana(amb, g, h));   // U x (V x W)
  auto right = compose_ana(amb, compose_ana(amb, f, g), h);  // (U x V) x W
  auto uv = pullback(amb, f.functor.f0, g.cover);
  auto vw = pullback(amb, g.functor.f0, h.cover);
  auto q1 = pullback(amb, compose(g.functor.f0, uv.p2), h.cover);
  auto q2 = pullback(amb, f.functor.f0, compose(g.cover, vw.p1));
  auto k = mediate(q2, compose(uv.p1, q1.p1), mediate(vw, compose(uv.p2, q1.p1), q1.p2));
  auto out = renaming_transformation(amb, left, k);
  if (!(out.tgt == right)) throw Error(ErrorKind::validation, "associator: renamed anafunctor differs from H(GF)");
  return out;
}

/// b F : G F => G' F for b : G => G'. The component is built on the
/// refinement by V' over the middle object and descended.
template <Ambient S>
AnaTransformation<S> whisker_ana(const S& amb, const Anafunctor<S>& f, const AnaTransformation<S>& b) {
  const auto& g = b.src;
  const auto& g2 = b.tgt;
  const auto& x = f.src;
  const auto& y = f.tgt;
  const auto& z = g.tgt;
  auto gf = compose_ana(amb, f, g);
  auto g2f = compose_ana(amb, f, g2);
  auto p = pullback(amb, f.functor.f0, g.cover);
  auto p2 = pullback(amb, f.functor.f0, g2.cover);
  auto t = pullback(amb, gf.cover, g2f.cover);
  auto base = compose(g.cover, compose(p.p2, t.p1));
  auto w2 = pullback(amb, base, g2.cover);
  auto bu = base_change_data(amb, x, f.cover);
  auto bv2 = base_change_data(amb, y, g2.cover);
  auto vv = pullback(amb, g.cover, g2.cover);
  auto local = detail::tabulate(amb, w2.apex, z.arr, [&](Elem k) {
    auto [ti, v3] = w2.pairs[k];
    auto [pi, pj] = t.pairs[ti];
    auto [u1, v1] = p.pairs[pi];
    auto [u2, v2] = p2.pairs[pj];
    Elem xo = f.cover(u1);
    Elem phi = f.functor.f1(bu.square.at(bu.m2.at(u1, u2), x.e(xo)));
    Elem moved = g2.functor.f1(bv2.square.at(bv2.m2.at(v3, v2), phi));
    return z.mul(amb, moved, b.comp(vv.at(v1, v3)));
  });
  auto comp = descend(amb, w2.p1, local);
  if (auto sec = find_section(amb, w2.p1)) {
    if (!(compose(local, *sec) == comp)) throw Error(ErrorKind::cocycle, "whisker: section shortcut disagrees");
  }
  return AnaTransformation<S>{std::move(gf), std::move(g2f), std::move(comp)};
}

/// H a : H F => H F' for a : F => F'.
template <Ambient S>
AnaTransformation<S> whisker_ana(const S& amb, const AnaTransformation<S>& a, const Anafunctor<S>& h) {
  const auto& f = a.src;
  const auto& f2 = a.tgt;
  const auto& y = f.tgt;
  auto hf = compose_ana(amb, f, h);
  auto hf2 = compose_ana(amb, f2, h);
  auto p = pullback(amb, f.functor.f0, h.cover);
  auto p2 = pullback(amb, f2.functor.f0, h.cover);
  auto t = pullback(amb, hf.cover, hf2.cover);
  auto uu = pullback(amb, f.cover, f2.cover);
  auto bw = base_change_data(amb, y, h.cover);
  auto comp = detail::tabulate(amb, t.apex, h.tgt.arr, [&](Elem k) {
    auto [pi, pj] = t.pairs[k];
    auto [u1, w1] = p.pairs[pi];
    auto [u2, w2] = p2.pairs[pj];
    Elem arrow = a.comp(uu.at(u1, u2));
    return h.functor.f1(bw.square.at(bw.m2.at(w1, w2), arrow));
  });
  return AnaTransformation<S>{std::move(hf), std::move(hf2), std::move(comp)};
}

/// Horizontal composite b * a : G F => G' F', as whisker then vcomp.
template <Ambient S>
AnaTransformation<S> hcomp_trans(const S& amb, const AnaTransformation<S>& a, const AnaTransformation<S>& b) {
  return vcomp_trans(amb, whisker_ana(amb, a, b.src), whisker_ana(amb, a.tgt, b));
}

// ---------------------------------------------------------------------------
// Comparison with functors

template <Ambient S>
struct FunctorComparison {
  Verdict verdict = Verdict::no;
  std::optional<Functor<S>> functor;
  std::optional<NatTrans<S>> iso;  // f . (X[V] -> X) => g on X[V]
};

/// A functor f : X -> Y with (X0, f) isomorphic to (V, g). Descent of g along
/// the cover is tried first, then a bounded search over all functors X -> Y.
template <Ambient S>
FunctorComparison<S> is_isomorphic_to_functor(const S& amb, const Anafunctor<S>& g,
                                              std::size_t search_bound = 20000) {
  FunctorComparison<S> out;
  const auto& x = g.src;
  const auto& y = g.tgt;
  auto can = base_change_functor(amb, x, g.cover);
  auto attempt = [&](const Functor<S>& f) -> bool {
    auto fc = compose_functors(f, can);
    std::vector<std::vector<Elem>> cand(g.cover.dom.size());
    for (Elem u = 0; u < g.cover.dom.size(); ++u)
      for (Elem h = 0; h < y.arr.size(); ++h)
        if (y.s(h) == fc.f0(u) && y.t(h) == g.functor.f0(u)) cand[u].push_back(h);
    bool found = false;
    search_arrows(amb, g.cover.dom, y.arr, cand, [&](const ArrowOf<S>& c) {
      NatTrans<S> a{fc, g.functor, c};
      if (validate_transformation(amb, a).passed() && is_nat_iso(amb, a)) {
        out.functor = f;
        out.iso = a;
        found = true;
        return false;
      }
      return true;
    });
    return found;
  };
  try {
    Functor<S> f{x, y, descend(amb, g.cover, g.functor.f0), descend(amb, can.f1, g.functor.f1)};
    if (validate_functor(amb, f).passed() && attempt(f)) {
      out.verdict = Verdict::yes;
      return out;
    }
  } catch (const Error&) {
  }
  std::size_t seen = 0;
  bool exhausted = search_arrows(amb, x.obj, y.obj, {}, [&](const ArrowOf<S>& f0) {
    std::vector<std::vector<Elem>> cand(x.arr.size());
    for (Elem h = 0; h < x.arr.size(); ++h)
      for (Elem k = 0; k < y.arr.size(); ++k)
        if (y.s(k) == f0(x.s(h)) && y.t(k) == f0(x.t(h))) cand[h].push_back(k);
    return search_arrows(amb, x.arr, y.arr, cand, [&](const ArrowOf<S>& f1) {
      if (++seen > search_bound) return false;
      Functor<S> f{x, y, f0, f1};
      if (!validate_functor(amb, f).passed()) return true;
      return !attempt(f);
    });
  });
  if (out.functor)
    out.verdict = Verdict::yes;
  else
    out.verdict = exhausted ? Verdict::no : Verdict::unknown;
  return out;
}

// ---------------------------------------------------------------------------
// Pseudoinverses

template <Ambient S>
struct Pseudoinverse {
  Anafunctor<S> inverse;     // (U, w^) : Y -|-> X
  AnaTransformation<S> iota;  // (X0, w) . (U, w^) => id_Y
  AnaTransformation<S> eps;   // (U, w^) . (X0, w) => id_X
};

/// The anafunctor inverse of a J-equivalence, built from a local splitting.
/// When the object component is itself a cover it is used as the cover.
template <Ambient S>
Pseudoinverse<S> pseudoinverse(const S& amb, const Functor<S>& w, const Pretopology<S>& j, bool j_saturated = false) {
  std::optional<LocalSplitting<S>> split;
  if (is_fully_faithful(amb, w) && j.contains(w.f0))
    split = splitting_on_objects(amb, w);
  else
    split = is_J_equivalence(amb, w, j, j_saturated).witness;
  if (!split) throw Error(ErrorKind::precondition, "pseudoinverse: functor is not a J-equivalence");
  const auto& sp = *split;
  const auto& x = w.dom;
  const auto& y = w.cod;
  Anafunctor<S> inv{y, x, sp.cover, sp.section};
  auto aw = from_functor(w);

  auto wu = compose_ana(amb, inv, aw);
  AnaTransformation<S> iota{wu, identity_ana(y), sp.iota.comp};

  auto uw = compose_ana(amb, aw, inv);
  auto ffd = fully_faithful_data(amb, w);
  auto xu = pullback(amb, w.f0, sp.cover);
  auto eps_comp = detail::tabulate(amb, xu.apex, x.arr, [&](Elem k) {
    auto [xo, u] = xu.pairs[k];
    return ff_preimage(amb, w, ffd, sp.section.f0(u), xo, sp.iota.comp(u));
  });
  AnaTransformation<S> eps{uw, identity_ana(x), std::move(eps_comp)};
  for (const auto* t : {&iota, &eps}) {
    auto r = validate_ana_transformation(amb, *t);
    if (!r.passed()) throw Error(ErrorKind::validation, "pseudoinverse: " + r.detail);
  }
  return {std::move(inv), std::move(iota), std::move(eps)};
}

}  // namespace anacat
