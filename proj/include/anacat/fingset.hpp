#pragma once

#include "anacat/ambient.hpp"
#include "anacat/fingrp.hpp"
#include "anacat/group.hpp"

namespace anacat {

/// Finite left G-sets and equivariant maps for a fixed finite group G.
/// Pullbacks carry the diagonal action.
struct FinGSet {
  struct Object {
    GroupPtr group;
    std::size_t n = 0;
    std::vector<std::vector<Elem>> act;  // act[g][x] = g . x
    std::size_t size() const { return n; }
    bool operator==(const Object& o) const {
      return n == o.n && act == o.act && (group == o.group || (group && o.group && *group == *o.group));
    }
  };

  GroupPtr group;

  static constexpr bool has_coproducts = true;

  explicit FinGSet(GroupPtr g) : group(std::move(g)) {}

  const char* name() const { return "fingset"; }

  /// Validates an action table against the group.
  Object gset(std::size_t n, std::vector<std::vector<Elem>> act) const {
    const auto& g = *group;
    if (act.size() != g.order()) throw Error(ErrorKind::validation, "action needs one row per group element");
    for (const auto& row : act) {
      if (row.size() != n) throw Error(ErrorKind::validation, "action row has wrong length");
      for (Elem y : row)
        if (y >= n) throw Error(ErrorKind::validation, "action leaves the carrier");
    }
    for (Elem x = 0; x < n; ++x) {
      if (act[g.unit][x] != x) throw Error(ErrorKind::validation, "identity does not act trivially");
      for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b)
          if (act[g.op(a, b)][x] != act[a][act[b][x]])
            throw Error(ErrorKind::validation, "action is not compatible with multiplication");
    }
    return Object{group, n, std::move(act)};
  }

  Object trivial_action(std::size_t n) const {
    std::vector<Elem> id(n);
    std::iota(id.begin(), id.end(), Elem{0});
    std::vector<std::vector<Elem>> act(group->order(), id);
    return Object{group, n, std::move(act)};
  }

  /// G acting on itself by left multiplication.
  Object regular() const {
    const auto& g = *group;
    std::vector<std::vector<Elem>> act(g.order(), std::vector<Elem>(g.order()));
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem x = 0; x < g.order(); ++x) act[a][x] = g.op(a, x);
    return Object{group, g.order(), std::move(act)};
  }

  bool is_morphism(const Object& d, const Object& c, std::span<const Elem> t) const {
    for (Elem a = 0; a < group->order(); ++a)
      for (Elem x = 0; x < d.n; ++x)
        if (t[d.act[a][x]] != c.act[a][t[x]]) return false;
    return true;
  }

  bool partial_ok(const Object& d, const Object& c, std::span<const Elem> t, std::size_t n) const {
    const Elem x = static_cast<Elem>(n - 1);
    for (Elem a = 0; a < group->order(); ++a) {
      Elem z = d.act[a][x];
      if (z < n && t[z] != c.act[a][t[x]]) return false;
    }
    return true;
  }

  Object pair_object(const Object& a, const Object& b, std::span<const ElemPair> pairs) const {
    std::map<ElemPair, Elem> idx;
    for (Elem k = 0; k < pairs.size(); ++k) idx[pairs[k]] = k;
    std::vector<std::vector<Elem>> act(group->order(), std::vector<Elem>(pairs.size()));
    for (Elem g = 0; g < group->order(); ++g)
      for (Elem k = 0; k < pairs.size(); ++k) {
        auto it = idx.find({a.act[g][pairs[k].first], b.act[g][pairs[k].second]});
        if (it == idx.end()) throw Error(ErrorKind::validation, "pair set is not a sub-G-set");
        act[g][k] = it->second;
      }
    return Object{group, pairs.size(), std::move(act)};
  }

  Object subobject(const Object& a, std::span<const Elem> elems) const {
    std::map<Elem, Elem> idx;
    for (Elem k = 0; k < elems.size(); ++k) idx[elems[k]] = k;
    std::vector<std::vector<Elem>> act(group->order(), std::vector<Elem>(elems.size()));
    for (Elem g = 0; g < group->order(); ++g)
      for (Elem k = 0; k < elems.size(); ++k) {
        auto it = idx.find(a.act[g][elems[k]]);
        if (it == idx.end()) throw Error(ErrorKind::validation, "element set is not a sub-G-set");
        act[g][k] = it->second;
      }
    return Object{group, elems.size(), std::move(act)};
  }

  Object terminal() const { return trivial_action(1); }

  Object sum_object(const Object& a, const Object& b) const {
    std::vector<std::vector<Elem>> act(group->order());
    for (Elem g = 0; g < group->order(); ++g) {
      act[g] = a.act[g];
      for (Elem y : b.act[g]) act[g].push_back(static_cast<Elem>(a.n + y));
    }
    return Object{group, a.n + b.n, std::move(act)};
  }

  /// Every action of G on {0..n-1} for n <= bound (not up to isomorphism).
  std::vector<Object> objects_up_to(std::size_t bound) const {
    std::vector<Object> out;
    out.push_back(Object{group, 0, std::vector<std::vector<Elem>>(group->order())});
    FinGrp grp;
    for (std::size_t n = 1; n <= bound; ++n) {
      auto sym = groups::symmetric(n);
      std::vector<std::vector<Elem>> perms;
      std::vector<Elem> p(n);
      std::iota(p.begin(), p.end(), Elem{0});
      do perms.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
      search_arrows(grp, FinGrp::of(group), FinGrp::of(sym), {}, [&](const Arrow<FinGrp::Object>& h) {
        std::vector<std::vector<Elem>> act(group->order());
        for (Elem g = 0; g < group->order(); ++g) act[g] = perms[h.table[g]];
        out.push_back(Object{group, n, std::move(act)});
        return true;
      });
    }
    return out;
  }
};

static_assert(Ambient<FinGSet>);

}  // namespace anacat
