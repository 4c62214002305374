#pragma once

// Crossed modules of finite groups and their internal groupoids in FinGrp.

#include <numeric>
#include <optional>
#include <vector>

#include "anacat/fingrp.hpp"
#include "anacat/internal.hpp"
#include "anacat/report.hpp"

namespace anacat {

/// t : G -> H with an action of H on G; act[h][g] is h acting on g.
struct CrossedModule {
  GroupPtr g, h;
  std::vector<Elem> t;
  std::vector<std::vector<Elem>> act;

  bool operator==(const CrossedModule& o) const { return *g == *o.g && *h == *o.h && t == o.t && act == o.act; }
};

inline VerificationReport validate_crossed_module(const CrossedModule& xm) {
  VerificationReport r("crossed-module", 0);
  const auto& g = *xm.g;
  const auto& h = *xm.h;
  const Elem ng = static_cast<Elem>(g.order()), nh = static_cast<Elem>(h.order());
  bool shape = xm.t.size() == ng && xm.act.size() == nh;
  for (const auto& row : xm.act) shape = shape && row.size() == ng;
  if (!r.expect(shape, "tables have the wrong size")) return r;
  for (Elem a = 0; a < ng; ++a)
    for (Elem b = 0; b < ng; ++b)
      if (!r.expect(xm.t[g.op(a, b)] == h.op(xm.t[a], xm.t[b]), "t is not a homomorphism", {{"g", a}, {"g'", b}}))
        return r;
  for (Elem x = 0; x < nh; ++x)
    for (Elem a = 0; a < ng; ++a)
      for (Elem b = 0; b < ng; ++b)
        if (!r.expect(xm.act[x][g.op(a, b)] == g.op(xm.act[x][a], xm.act[x][b]),
                      "action is not by automorphisms", {{"h", x}, {"g", a}, {"g'", b}}))
          return r;
  for (Elem a = 0; a < ng; ++a)
    if (!r.expect(xm.act[h.unit][a] == a, "unit acts non-trivially", {{"g", a}})) return r;
  for (Elem x = 0; x < nh; ++x)
    for (Elem y = 0; y < nh; ++y)
      for (Elem a = 0; a < ng; ++a)
        if (!r.expect(xm.act[h.op(x, y)][a] == xm.act[x][xm.act[y][a]], "action is not a homomorphism",
                      {{"h", x}, {"h'", y}, {"g", a}}))
          return r;
  for (Elem x = 0; x < nh; ++x)
    for (Elem a = 0; a < ng; ++a) {
      Elem conj = h.op(h.op(x, xm.t[a]), h.inv[x]);
      if (!r.expect(xm.t[xm.act[x][a]] == conj, "t is not equivariant", {{"h", x}, {"g", a}})) return r;
    }
  for (Elem a = 0; a < ng; ++a)
    for (Elem b = 0; b < ng; ++b) {
      Elem conj = g.op(g.op(a, b), g.inv[a]);
      if (!r.expect(xm.act[xm.t[a]][b] == conj, "Peiffer identity fails", {{"g", a}, {"g'", b}})) return r;
    }
  return r;
}

inline CrossedModule trivial_action_xmod(GroupPtr g, GroupPtr h, std::vector<Elem> t) {
  std::vector<std::vector<Elem>> act(h->order(), std::vector<Elem>(g->order()));
  for (auto& row : act) std::iota(row.begin(), row.end(), Elem{0});
  return CrossedModule{std::move(g), std::move(h), std::move(t), std::move(act)};
}

/// id : G -> G with the conjugation action.
inline CrossedModule identity_xmod(GroupPtr g) {
  const auto& gr = *g;
  std::vector<Elem> t(gr.order());
  std::iota(t.begin(), t.end(), Elem{0});
  std::vector<std::vector<Elem>> act(gr.order(), std::vector<Elem>(gr.order()));
  for (Elem x = 0; x < gr.order(); ++x)
    for (Elem a = 0; a < gr.order(); ++a) act[x][a] = gr.op(gr.op(x, a), gr.inv[x]);
  return CrossedModule{g, g, std::move(t), std::move(act)};
}

/// X0 = H and X1 = G x| H, with (g, h) stored at g |H| + h.
inline Category<FinGrp> xmod_to_groupoid(const CrossedModule& xm) {
  const auto& g = *xm.g;
  const auto& h = *xm.h;
  const Elem ng = static_cast<Elem>(g.order()), nh = static_cast<Elem>(h.order());
  auto enc = [nh](Elem a, Elem x) { return a * nh + x; };
  std::vector<std::vector<Elem>> mul(ng * nh, std::vector<Elem>(ng * nh));
  for (Elem a = 0; a < ng; ++a)
    for (Elem x = 0; x < nh; ++x)
      for (Elem b = 0; b < ng; ++b)
        for (Elem y = 0; y < nh; ++y) mul[enc(a, x)][enc(b, y)] = enc(g.op(a, xm.act[x][b]), h.op(x, y));
  FinGrp amb;
  auto obj = FinGrp::of(xm.h);
  auto arr = FinGrp::of(groups::make(std::move(mul), "(" + g.label + "x|" + h.label + ")"));
  std::vector<Elem> s(ng * nh), t(ng * nh), e(nh), inv(ng * nh);
  for (Elem a = 0; a < ng; ++a)
    for (Elem x = 0; x < nh; ++x) {
      s[enc(a, x)] = x;
      t[enc(a, x)] = h.op(xm.t[a], x);
      inv[enc(a, x)] = enc(g.inv[a], h.op(xm.t[a], x));
    }
  for (Elem x = 0; x < nh; ++x) e[x] = enc(g.unit, x);
  Category<FinGrp> out{obj,
                       arr,
                       make_arrow(amb, arr, obj, s),
                       make_arrow(amb, arr, obj, t),
                       make_arrow(amb, obj, arr, e),
                       {},
                       make_arrow(amb, arr, arr, inv)};
  const auto& c = out.composable(amb);
  std::vector<Elem> m(c.size());
  for (Elem k = 0; k < c.size(); ++k) {
    auto [second, first] = c.pairs[k];
    Elem a2 = second / nh, a1 = first / nh, x1 = first % nh;
    m[k] = enc(g.op(a2, a1), x1);
  }
  out.m = make_arrow(amb, c.apex, arr, std::move(m));
  return out;
}

/// G = ker s with t restricted, H = X0, and H acting by conjugation with units.
inline CrossedModule groupoid_to_xmod(const Category<FinGrp>& x) {
  FinGrp amb;
  if (!x.obj.group || !x.arr.group || !validate_groupoid(amb, x).passed()) throw Error(ErrorKind::precondition, "groupoid_to_xmod: not a groupoid");
  const auto& arr = *x.arr.group;
  const auto& obj = *x.obj.group;
  std::vector<Elem> kernel;
  for (Elem a = 0; a < arr.order(); ++a)
    if (x.s(a) == obj.unit) kernel.push_back(a);
  auto sub = amb.subobject(x.arr, kernel);
  std::vector<Elem> where(arr.order(), 0);
  for (Elem k = 0; k < kernel.size(); ++k) where[kernel[k]] = k;
  std::vector<Elem> t(kernel.size());
  for (Elem k = 0; k < kernel.size(); ++k) t[k] = x.t(kernel[k]);
  std::vector<std::vector<Elem>> act(obj.order(), std::vector<Elem>(kernel.size()));
  for (Elem h = 0; h < obj.order(); ++h) {
    Elem u = x.e(h);
    for (Elem k = 0; k < kernel.size(); ++k) act[h][k] = where[arr.op(arr.op(u, kernel[k]), arr.inv[u])];
  }
  return CrossedModule{sub.group, x.obj.group, std::move(t), std::move(act)};
}

/// A pair of group isomorphisms G -> G', H -> H' intertwining t and the actions.
inline std::optional<std::pair<std::vector<Elem>, std::vector<Elem>>> xmod_isomorphism(const CrossedModule& a,
                                                                                      const CrossedModule& b) {
  FinGrp amb;
  auto ga = FinGrp::of(a.g), gb = FinGrp::of(b.g), ha = FinGrp::of(a.h), hb = FinGrp::of(b.h);
  if (ga.size() != gb.size() || ha.size() != hb.size()) return std::nullopt;
  std::optional<std::pair<std::vector<Elem>, std::vector<Elem>>> out;
  search_arrows(amb, ha, hb, {}, [&](const ArrowOf<FinGrp>& ph) {
    if (!is_iso(ph)) return true;
    search_arrows(amb, ga, gb, {}, [&](const ArrowOf<FinGrp>& pg) {
      if (!is_iso(pg)) return true;
      for (Elem k = 0; k < ga.size(); ++k)
        if (ph(a.t[k]) != b.t[pg(k)]) return true;
      for (Elem h = 0; h < ha.size(); ++h)
        for (Elem k = 0; k < ga.size(); ++k)
          if (pg(a.act[h][k]) != b.act[ph(h)][pg(k)]) return true;
      out = {{pg.table, ph.table}};
      return false;
    });
    return !out;
  });
  return out;
}

}  // namespace anacat
