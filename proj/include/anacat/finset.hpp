#pragma once

#include "anacat/ambient.hpp"

namespace anacat {

/// Finite sets {0, ..., n-1} and all functions between them.
struct FinSet {
  struct Object {
    std::size_t n = 0;
    std::size_t size() const { return n; }
    bool operator==(const Object&) const = default;
  };

  static constexpr bool has_coproducts = true;

  static Object set(std::size_t n) { return Object{n}; }

  const char* name() const { return "finset"; }
  bool is_morphism(const Object&, const Object&, std::span<const Elem>) const { return true; }
  bool partial_ok(const Object&, const Object&, std::span<const Elem>, std::size_t) const { return true; }
  Object pair_object(const Object&, const Object&, std::span<const ElemPair> pairs) const {
    return Object{pairs.size()};
  }
  Object subobject(const Object&, std::span<const Elem> elems) const { return Object{elems.size()}; }
  Object terminal() const { return Object{1}; }
  Object sum_object(const Object& a, const Object& b) const { return Object{a.n + b.n}; }
  std::vector<Object> objects_up_to(std::size_t bound) const {
    std::vector<Object> out;
    for (std::size_t n = 0; n <= bound; ++n) out.push_back(Object{n});
    return out;
  }
};

static_assert(Ambient<FinSet>);

using SetArrow = Arrow<FinSet::Object>;

inline SetArrow set_map(std::size_t dom, std::size_t cod, std::vector<Elem> table) {
  return make_arrow(FinSet{}, FinSet::set(dom), FinSet::set(cod), std::move(table));
}

}  // namespace anacat
