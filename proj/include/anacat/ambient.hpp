#pragma once

// Finite concrete ambient categories.
//
// An ambient is a value type `S` exposing a nested `Object` type whose
// elements are the indices 0..size()-1, together with the structure hooks
// below. Arrows are element tables; everything else (composition, chosen
// pullbacks, mediating maps, effectivity, descent) is written once here in
// terms of those hooks.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace anacat {

using Elem = std::uint32_t;
using ElemPair = std::pair<Elem, Elem>;

enum class ErrorKind {
  domain_mismatch,
  cone,
  not_iso,
  cocycle,
  not_effective,
  unsupported,
  precondition,
  validation,
  parse,
  usage,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain_mismatch: return "domain-mismatch";
    case ErrorKind::cone: return "cone-condition";
    case ErrorKind::not_iso: return "not-iso";
    case ErrorKind::cocycle: return "cocycle-violation";
    case ErrorKind::not_effective: return "not-effective";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::validation: return "validation";
    case ErrorKind::parse: return "parse";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <class O>
struct Arrow {
  O dom;
  O cod;
  std::vector<Elem> table;

  Elem operator()(Elem x) const {
    if (x >= table.size()) throw Error(ErrorKind::domain_mismatch, "element out of range");
    return table[x];
  }
  bool operator==(const Arrow&) const = default;
};

template <class S>
concept Ambient = requires(const S& s, const typename S::Object& a, std::span<const Elem> t,
                           std::span<const ElemPair> pairs, std::size_t n) {
  { a.size() } -> std::convertible_to<std::size_t>;
  { a == a } -> std::convertible_to<bool>;
  { s.is_morphism(a, a, t) } -> std::same_as<bool>;
  { s.partial_ok(a, a, t, n) } -> std::same_as<bool>;
  { s.pair_object(a, a, pairs) } -> std::same_as<typename S::Object>;
  { s.subobject(a, t) } -> std::same_as<typename S::Object>;
  { s.terminal() } -> std::same_as<typename S::Object>;
  { s.objects_up_to(n) } -> std::same_as<std::vector<typename S::Object>>;
  { s.name() } -> std::convertible_to<std::string>;
  { S::has_coproducts } -> std::convertible_to<bool>;
};

template <class S>
using ObjectOf = typename S::Object;
template <class S>
using ArrowOf = Arrow<typename S::Object>;

template <class O>
std::vector<Elem> elements(const O& a) {
  std::vector<Elem> out(a.size());
  std::iota(out.begin(), out.end(), Elem{0});
  return out;
}

template <class O>
Elem evaluate(const Arrow<O>& f, Elem x) {
  return f(x);
}

template <class O>
Arrow<O> identity(const O& a) {
  return Arrow<O>{a, a, elements(a)};
}

template <class O>
bool is_identity(const Arrow<O>& f) {
  if (!(f.dom == f.cod)) return false;
  for (Elem i = 0; i < f.table.size(); ++i)
    if (f.table[i] != i) return false;
  return true;
}

/// g after f.
template <class O>
Arrow<O> compose(const Arrow<O>& g, const Arrow<O>& f) {
  if (!(f.cod == g.dom)) throw Error(ErrorKind::domain_mismatch, "compose: cod(f) != dom(g)");
  Arrow<O> out{f.dom, g.cod, std::vector<Elem>(f.table.size())};
  for (std::size_t i = 0; i < f.table.size(); ++i) out.table[i] = g.table[f.table[i]];
  return out;
}

template <class O>
bool is_surjective(const Arrow<O>& f) {
  std::vector<char> hit(f.cod.size(), 0);
  for (Elem y : f.table) hit[y] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

template <class O>
bool is_injective(const Arrow<O>& f) {
  std::vector<char> hit(f.cod.size(), 0);
  for (Elem y : f.table) {
    if (hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

/// Bijective structure-preserving maps are isomorphisms in every shipped ambient.
template <class O>
bool is_iso(const Arrow<O>& f) {
  return f.dom.size() == f.cod.size() && is_injective(f);
}

template <class O>
Arrow<O> inverse(const Arrow<O>& f) {
  if (!is_iso(f)) throw Error(ErrorKind::not_iso, "inverse of a non-isomorphism");
  Arrow<O> out{f.cod, f.dom, std::vector<Elem>(f.table.size())};
  for (Elem i = 0; i < f.table.size(); ++i) out.table[f.table[i]] = i;
  return out;
}

template <Ambient S>
ArrowOf<S> make_arrow(const S& s, const ObjectOf<S>& dom, const ObjectOf<S>& cod,
                      std::vector<Elem> table) {
  if (table.size() != dom.size())
    throw Error(ErrorKind::validation, "arrow table has wrong length");
  for (Elem y : table)
    if (y >= cod.size()) throw Error(ErrorKind::validation, "arrow table leaves codomain");
  if (!s.is_morphism(dom, cod, table))
    throw Error(ErrorKind::validation, "table does not preserve " + std::string(s.name()) + " structure");
  return ArrowOf<S>{dom, cod, std::move(table)};
}

template <Ambient S>
ArrowOf<S> to_terminal(const S& s, const ObjectOf<S>& a) {
  return ArrowOf<S>{a, s.terminal(), std::vector<Elem>(a.size(), 0)};
}

// ---------------------------------------------------------------------------
// Chosen pullbacks

template <class O>
struct Pullback {
  enum class Shape { general, left_identity, right_identity };

  Arrow<O> left;   // f : A -> C
  Arrow<O> right;  // g : B -> C
  O apex;
  Arrow<O> p1;  // apex -> A
  Arrow<O> p2;  // apex -> B
  std::vector<ElemPair> pairs;
  Shape shape = Shape::general;
  std::vector<std::uint32_t> start;          // first pair with left element a
  std::vector<std::vector<Elem>> preimages;  // g^-1(c), increasing

  std::optional<Elem> find(Elem a, Elem b) const {
    if (a >= left.dom.size() || b >= right.dom.size()) return std::nullopt;
    switch (shape) {
      case Shape::left_identity:
        if (right.table[b] != a) return std::nullopt;
        return b;
      case Shape::right_identity:
        if (left.table[a] != b) return std::nullopt;
        return a;
      case Shape::general: break;
    }
    const auto& bucket = preimages[left.table[a]];
    auto it = std::lower_bound(bucket.begin(), bucket.end(), b);
    if (it == bucket.end() || *it != b) return std::nullopt;
    return static_cast<Elem>(start[a] + (it - bucket.begin()));
  }
  Elem at(Elem a, Elem b) const {
    auto k = find(a, b);
    if (!k) throw Error(ErrorKind::cone, "pair does not lie in the pullback");
    return *k;
  }
  std::size_t size() const { return pairs.size(); }
};

/// Chosen pullback of the cospan f : A -> C <- B : g. When one leg is an
/// identity arrow the apex is the other leg's domain, so that pulling back
/// along an identity changes nothing; otherwise the apex enumerates the pairs
/// (a, b) with f(a) = g(b) in lexicographic order.
template <Ambient S>
Pullback<ObjectOf<S>> pullback(const S& s, const ArrowOf<S>& f, const ArrowOf<S>& g) {
  if (!(f.cod == g.cod)) throw Error(ErrorKind::domain_mismatch, "pullback: legs have different codomains");
  using O = ObjectOf<S>;
  Pullback<O> pb{f, g, {}, {}, {}, {}, Pullback<O>::Shape::general, {}, {}};
  const std::size_t na = f.dom.size(), nb = g.dom.size();
  if (is_identity(f)) {
    pb.shape = Pullback<O>::Shape::left_identity;
    for (Elem b = 0; b < nb; ++b) pb.pairs.emplace_back(g.table[b], b);
    pb.apex = g.dom;
  } else if (is_identity(g)) {
    pb.shape = Pullback<O>::Shape::right_identity;
    for (Elem a = 0; a < na; ++a) pb.pairs.emplace_back(a, f.table[a]);
    pb.apex = f.dom;
  } else {
    pb.preimages.resize(f.cod.size());
    for (Elem b = 0; b < nb; ++b) pb.preimages[g.table[b]].push_back(b);
    pb.start.resize(na);
    for (Elem a = 0; a < na; ++a) {
      pb.start[a] = static_cast<std::uint32_t>(pb.pairs.size());
      for (Elem b : pb.preimages[f.table[a]]) pb.pairs.emplace_back(a, b);
    }
    pb.apex = s.pair_object(f.dom, g.dom, pb.pairs);
  }
  pb.p1 = Arrow<O>{pb.apex, f.dom, std::vector<Elem>(pb.pairs.size())};
  pb.p2 = Arrow<O>{pb.apex, g.dom, std::vector<Elem>(pb.pairs.size())};
  for (std::size_t k = 0; k < pb.pairs.size(); ++k) std::tie(pb.p1.table[k], pb.p2.table[k]) = pb.pairs[k];
  return pb;
}

/// The unique arrow into the apex whose projections are p and q.
template <class O>
Arrow<O> mediate(const Pullback<O>& pb, const Arrow<O>& p, const Arrow<O>& q) {
  if (!(p.dom == q.dom) || !(p.cod == pb.left.dom) || !(q.cod == pb.right.dom))
    throw Error(ErrorKind::domain_mismatch, "mediate: cone has the wrong shape");
  Arrow<O> out{p.dom, pb.apex, std::vector<Elem>(p.table.size())};
  for (std::size_t z = 0; z < p.table.size(); ++z) {
    auto k = pb.find(p.table[z], q.table[z]);
    if (!k) throw Error(ErrorKind::cone, "mediate: cone does not commute over the cospan");
    out.table[z] = *k;
  }
  return out;
}

template <Ambient S>
Pullback<ObjectOf<S>> product(const S& s, const ObjectOf<S>& a, const ObjectOf<S>& b) {
  return pullback(s, to_terminal(s, a), to_terminal(s, b));
}

/// f x g : A x B -> C x D between chosen products.
template <Ambient S>
ArrowOf<S> product_map(const S& s, const ArrowOf<S>& f, const ArrowOf<S>& g) {
  auto src = product(s, f.dom, g.dom);
  auto dst = product(s, f.cod, g.cod);
  return mediate(dst, compose(f, src.p1), compose(g, src.p2));
}

template <class O>
struct Coproduct {
  O sum;
  Arrow<O> in1;
  Arrow<O> in2;
};

template <Ambient S>
Coproduct<ObjectOf<S>> coproduct(const S& s, const ObjectOf<S>& a, const ObjectOf<S>& b) {
  if constexpr (S::has_coproducts) {
    auto sum = s.sum_object(a, b);
    Coproduct<ObjectOf<S>> out{sum, {a, sum, elements(a)}, {b, sum, {}}};
    for (Elem x = 0; x < b.size(); ++x) out.in2.table.push_back(static_cast<Elem>(a.size() + x));
    return out;
  } else {
    throw Error(ErrorKind::unsupported, std::string("coproducts unsupported in ") + s.name());
  }
}

template <Ambient S>
Pullback<ObjectOf<S>> kernel_pair(const S& s, const ArrowOf<S>& f) {
  return pullback(s, f, f);
}

// ---------------------------------------------------------------------------
// Arrow search

/// Enumerates the arrows dom -> cod, optionally restricting the image of each
/// element to a candidate list. `visit` returns false to stop early; the
/// function returns false iff the search was stopped.
template <Ambient S, class Visit>
bool search_arrows(const S& s, const ObjectOf<S>& dom, const ObjectOf<S>& cod,
                   const std::vector<std::vector<Elem>>& candidates, Visit&& visit) {
  const std::size_t n = dom.size(), m = cod.size();
  std::vector<Elem> all(m);
  std::iota(all.begin(), all.end(), Elem{0});
  auto options = [&](std::size_t x) -> const std::vector<Elem>& {
    return candidates.empty() ? all : candidates[x];
  };
  std::vector<Elem> table(n, 0);
  std::vector<std::size_t> pos(n, 0);
  if (n == 0) {
    if (!s.is_morphism(dom, cod, table)) return true;
    return static_cast<bool>(visit(ArrowOf<S>{dom, cod, table}));
  }
  std::size_t depth = 0;
  pos[0] = 0;
  while (true) {
    const auto& opt = options(depth);
    if (pos[depth] >= opt.size()) {
      if (depth == 0) return true;
      --depth;
      ++pos[depth];
      continue;
    }
    table[depth] = opt[pos[depth]];
    if (!s.partial_ok(dom, cod, std::span<const Elem>(table.data(), depth + 1), depth + 1)) {
      ++pos[depth];
      continue;
    }
    if (depth + 1 == n) {
      if (s.is_morphism(dom, cod, table) && !visit(ArrowOf<S>{dom, cod, table})) return false;
      ++pos[depth];
      continue;
    }
    ++depth;
    pos[depth] = 0;
  }
}

template <Ambient S>
std::vector<ArrowOf<S>> all_arrows(const S& s, const ObjectOf<S>& dom, const ObjectOf<S>& cod) {
  std::vector<ArrowOf<S>> out;
  search_arrows(s, dom, cod, {}, [&](const ArrowOf<S>& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

/// Some arrow l : U -> P with f . l = c, if any.
template <Ambient S>
std::optional<ArrowOf<S>> find_lift(const S& s, const ArrowOf<S>& c, const ArrowOf<S>& f) {
  if (!(c.cod == f.cod)) return std::nullopt;
  std::vector<std::vector<Elem>> cand(c.dom.size());
  for (Elem u = 0; u < c.dom.size(); ++u)
    for (Elem p = 0; p < f.dom.size(); ++p)
      if (f.table[p] == c.table[u]) cand[u].push_back(p);
  std::optional<ArrowOf<S>> out;
  search_arrows(s, c.dom, f.dom, cand, [&](const ArrowOf<S>& l) {
    out = l;
    return false;
  });
  return out;
}

template <Ambient S>
std::optional<ArrowOf<S>> find_section(const S& s, const ArrowOf<S>& f) {
  return find_lift(s, identity(f.cod), f);
}

// ---------------------------------------------------------------------------
// Effectivity and descent

namespace detail {

inline std::vector<Elem> classes_of(std::size_t n, const std::vector<ElemPair>& rel) {
  std::vector<Elem> parent(n);
  std::iota(parent.begin(), parent.end(), Elem{0});
  std::function<Elem(Elem)> root = [&](Elem x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (auto [a, b] : rel) {
    Elem ra = root(a), rb = root(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  for (Elem x = 0; x < n; ++x) parent[x] = root(x);
  return parent;
}

}  // namespace detail

/// Whether f is the coequalizer of its kernel pair. Cocones are checked
/// against every probe object (ambient objects up to `probe_bound` elements,
/// plus cod f): each must factor through f in exactly one way.
template <Ambient S>
bool is_effective(const S& s, const ArrowOf<S>& f, std::size_t probe_bound = 4) {
  if (is_iso(f)) return true;
  auto kp = kernel_pair(s, f);
  auto cls = detail::classes_of(f.dom.size(), kp.pairs);
  std::vector<Elem> reps;  // first element of each kernel-pair class
  for (Elem x = 0; x < cls.size(); ++x)
    if (cls[x] == x) reps.push_back(x);

  auto probes = s.objects_up_to(probe_bound);
  probes.push_back(f.cod);
  for (const auto& z : probes) {
    const std::size_t nz = z.size();
    // cocones h : dom f -> z are exactly the class-constant morphisms
    std::vector<Elem> vals(reps.size(), 0);
    std::vector<Elem> h(f.dom.size(), 0);
    bool done = false;
    if (nz == 0 && !reps.empty()) continue;  // no cocones into an empty probe
    while (!done) {
      for (Elem x = 0; x < h.size(); ++x) {
        auto it = std::lower_bound(reps.begin(), reps.end(), cls[x]);
        h[x] = vals[static_cast<std::size_t>(it - reps.begin())];
      }
      if (s.is_morphism(f.dom, z, h)) {
        std::vector<std::vector<Elem>> cand(f.cod.size());
        std::vector<char> fixed(f.cod.size(), 0);
        for (Elem x = 0; x < h.size(); ++x) {
          if (!fixed[f.table[x]]) cand[f.table[x]] = {h[x]};
          fixed[f.table[x]] = 1;
        }
        for (Elem b = 0; b < f.cod.size(); ++b)
          if (!fixed[b])
            for (Elem y = 0; y < nz; ++y) cand[b].push_back(y);
        std::size_t count = 0;
        search_arrows(s, f.cod, z, cand, [&](const ArrowOf<S>&) { return ++count < 2; });
        if (count != 1) return false;
      }
      std::size_t i = 0;
      while (i < vals.size() && ++vals[i] == nz) vals[i++] = 0;
      if (i == vals.size()) done = true;
    }
  }
  return true;
}

/// The unique g : B -> Y with g . q = h, for an effective q : E -> B and an h
/// that agrees on the kernel pair of q.
template <Ambient S>
ArrowOf<S> descend(const S& s, const ArrowOf<S>& q, const ArrowOf<S>& h) {
  if (!(q.dom == h.dom)) throw Error(ErrorKind::domain_mismatch, "descend: dom(q) != dom(h)");
  if (is_identity(q)) return h;
  auto kp = kernel_pair(s, q);
  for (auto [a, b] : kp.pairs)
    if (h.table[a] != h.table[b])
      throw Error(ErrorKind::cocycle, "descend: h disagrees on the kernel pair at (" + std::to_string(a) +
                                          ", " + std::to_string(b) + ")");
  constexpr Elem unset = 0xffffffffu;
  std::vector<Elem> g(q.cod.size(), unset);
  for (Elem e = 0; e < q.dom.size(); ++e)
    if (g[q.table[e]] == unset) g[q.table[e]] = h.table[e];
  if (std::find(g.begin(), g.end(), unset) != g.end())
    throw Error(ErrorKind::not_effective, "descend: cover is not surjective");
  if (!s.is_morphism(q.cod, h.cod, g))
    throw Error(ErrorKind::not_effective, "descend: descended map does not preserve structure");
  ArrowOf<S> out{q.cod, h.cod, std::move(g)};
  if (!(compose(out, q) == h)) throw Error(ErrorKind::cocycle, "descend: factorisation check failed");
  return out;
}

}  // namespace anacat
