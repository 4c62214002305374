#pragma once

#include "anacat/ambient.hpp"
#include "anacat/group.hpp"

namespace anacat {

/// Finite groups and homomorphisms. Pullbacks are subgroups of the product.
struct FinGrp {
  struct Object {
    GroupPtr group;
    std::size_t size() const { return group ? group->order() : 0; }
    bool operator==(const Object& o) const { return group == o.group || (group && o.group && *group == *o.group); }
  };

  static constexpr bool has_coproducts = false;

  static Object of(GroupPtr g) { return Object{std::move(g)}; }

  const char* name() const { return "fingrp"; }

  /// Checked on products with a generating set of the domain.
  bool is_morphism(const Object& d, const Object& c, std::span<const Elem> t) const {
    const auto& g = *d.group;
    const auto& h = *c.group;
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem s : g.generators)
        if (t[g.op(a, s)] != h.op(t[a], t[s])) return false;
    return t[g.unit] == h.unit;
  }

  bool partial_ok(const Object& d, const Object& c, std::span<const Elem> t, std::size_t n) const {
    const auto& g = *d.group;
    const auto& h = *c.group;
    const Elem x = static_cast<Elem>(n - 1);
    for (Elem y = 0; y < n; ++y) {
      Elem p = g.op(x, y);
      if (p < n && t[p] != h.op(t[x], t[y])) return false;
      p = g.op(y, x);
      if (p < n && t[p] != h.op(t[y], t[x])) return false;
    }
    return true;
  }

  Object pair_object(const Object& a, const Object& b, std::span<const ElemPair> pairs) const {
    return Object{std::make_shared<const FiniteGroup>(FiniteGroup::from_pairs(
        a.group, b.group, {pairs.begin(), pairs.end()}, "(" + a.group->label + "x" + b.group->label + ")"))};
  }

  Object subobject(const Object& a, std::span<const Elem> elems) const {
    const auto& g = *a.group;
    constexpr Elem none = 0xffffffffu;
    std::vector<Elem> idx(g.order(), none);
    for (Elem k = 0; k < elems.size(); ++k) idx[elems[k]] = k;
    std::vector<std::vector<Elem>> mul(elems.size(), std::vector<Elem>(elems.size()));
    for (Elem i = 0; i < elems.size(); ++i)
      for (Elem j = 0; j < elems.size(); ++j) {
        Elem k = idx[g.op(elems[i], elems[j])];
        if (k == none) throw Error(ErrorKind::validation, "element set is not a subgroup");
        mul[i][j] = k;
      }
    return Object{groups::make(std::move(mul), "sub(" + g.label + ")", false)};
  }

  Object terminal() const {
    static const GroupPtr one = groups::trivial();
    return Object{one};
  }

  std::vector<Object> objects_up_to(std::size_t bound) const {
    std::vector<Object> out;
    for (auto& g : groups::all_up_to(std::min<std::size_t>(bound, 8))) out.push_back(Object{g});
    return out;
  }

  Object sum_object(const Object&, const Object&) const {
    throw Error(ErrorKind::unsupported, "coproducts unsupported in fingrp");
  }
};

static_assert(Ambient<FinGrp>);

}  // namespace anacat
