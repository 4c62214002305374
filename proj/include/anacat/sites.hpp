#pragma once

// Singleton and family pretopologies on a finite ambient, with bounded checks
// of their axioms and derived notions.

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "anacat/ambient.hpp"
#include "anacat/report.hpp"

namespace anacat {

/// A class of covers given by a membership predicate, plus, for each object,
/// the finite list of covers that existential searches range over.
template <Ambient S>
struct Pretopology {
  using Arr = ArrowOf<S>;
  using Obj = ObjectOf<S>;

  std::string name;
  std::function<bool(const Arr&)> contains;
  std::function<std::vector<Arr>(const Obj&)> generators;

  bool operator()(const Arr& f) const { return contains(f); }
};

template <Ambient S>
using Family = std::vector<ArrowOf<S>>;

template <Ambient S>
struct FamilyPretopology {
  using Obj = ObjectOf<S>;

  std::string name;
  /// The base is passed explicitly so that empty families make sense.
  std::function<bool(const Obj&, const Family<S>&)> contains;
  std::function<std::vector<Family<S>>(const Obj&)> generators;
};

namespace detail {

/// Per-object memo for generator lists.
template <Ambient S, class T>
class ObjectCache {
 public:
  template <class F>
  const T& get(const ObjectOf<S>& a, F&& make) {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto& [k, v] : entries_)
      if (k == a) return v;
    entries_.emplace_back(a, make(a));
    return entries_.back().second;
  }

 private:
  std::mutex mu_;
  std::vector<std::pair<ObjectOf<S>, T>> entries_;
};

template <Ambient S, class T, class F>
std::function<T(const ObjectOf<S>&)> memoised(F make) {
  auto cache = std::make_shared<ObjectCache<S, T>>();
  return [cache, make](const ObjectOf<S>& a) { return cache->get(a, make); };
}

template <class O>
bool lex_less(const Arrow<O>& a, const Arrow<O>& b) {
  if (a.dom.size() != b.dom.size()) return a.dom.size() < b.dom.size();
  return a.table < b.table;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Named pretopologies

/// Isomorphisms; the only generator of A is id_A.
template <Ambient S>
Pretopology<S> triv(const S&) {
  return {"triv", [](const ArrowOf<S>& f) { return is_iso(f); },
          [](const ObjectOf<S>& a) { return std::vector<ArrowOf<S>>{identity(a)}; }};
}

/// Covers of A generated by id_A followed by every member of the class with
/// domain among the ambient's objects up to `gen_bound` elements.
template <Ambient S>
std::function<std::vector<ArrowOf<S>>(const ObjectOf<S>&)> generators_from(
    const S& s, std::function<bool(const ArrowOf<S>&)> member, std::size_t gen_bound) {
  return detail::memoised<S, std::vector<ArrowOf<S>>>([s, member, gen_bound](const ObjectOf<S>& a) {
    std::vector<ArrowOf<S>> out{identity(a)};
    for (const auto& u : s.objects_up_to(gen_bound)) {
      if (u.size() < a.size()) continue;
      search_arrows(s, u, a, {}, [&](const ArrowOf<S>& f) {
        if (member(f) && !is_identity(f)) out.push_back(f);
        return true;
      });
    }
    return out;
  });
}

template <Ambient S>
Pretopology<S> surjections(const S& s, std::size_t gen_bound = 4, std::string name = "surj") {
  std::function<bool(const ArrowOf<S>&)> member = [](const ArrowOf<S>& f) { return is_surjective(f); };
  return {std::move(name), member, generators_from(s, member, gen_bound)};
}

template <Ambient S>
Pretopology<S> split_epis(const S& s, std::size_t gen_bound = 4) {
  std::function<bool(const ArrowOf<S>&)> member = [s](const ArrowOf<S>& f) {
    return find_section(s, f).has_value();
  };
  return {"split", member, generators_from(s, member, gen_bound)};
}

/// Every arrow counts as a cover. Not a subcanonical class.
template <Ambient S>
Pretopology<S> all_maps(const S& s, std::size_t gen_bound = 4) {
  std::function<bool(const ArrowOf<S>&)> member = [](const ArrowOf<S>&) { return true; };
  return {"all", member, generators_from(s, member, gen_bound)};
}

/// Isomorphisms together with the listed arrows, each taken up to
/// isomorphism over its codomain.
template <Ambient S>
Pretopology<S> custom_pretopology(const S& s, std::string name, std::vector<ArrowOf<S>> listed) {
  auto shared = std::make_shared<const std::vector<ArrowOf<S>>>(std::move(listed));
  auto member = [s, shared](const ArrowOf<S>& f) {
    if (is_iso(f)) return true;
    for (const auto& c : *shared) {
      if (!(c.cod == f.cod) || c.dom.size() != f.dom.size()) continue;
      bool found = false;
      search_arrows(s, f.dom, c.dom, {}, [&](const ArrowOf<S>& phi) {
        found = is_iso(phi) && compose(c, phi) == f;
        return !found;
      });
      if (found) return true;
    }
    return false;
  };
  auto gens = [shared](const ObjectOf<S>& a) {
    std::vector<ArrowOf<S>> out{identity(a)};
    for (const auto& c : *shared)
      if (c.cod == a) out.push_back(c);
    return out;
  };
  return {std::move(name), member, gens};
}

// ---------------------------------------------------------------------------
// Families

template <Ambient S>
ArrowOf<S> inclusion(const S& s, const ObjectOf<S>& a, const std::vector<Elem>& elems) {
  return ArrowOf<S>{s.subobject(a, elems), a, elems};
}

/// Jointly surjective families. Generators of A: {id_A} and the families of
/// two sub-object inclusions whose images cover A.
template <Ambient S>
FamilyPretopology<S> jointly_surjective(const S& s) {
  auto contains = [](const ObjectOf<S>& base, const Family<S>& fam) {
    std::vector<char> hit(base.size(), 0);
    for (const auto& f : fam) {
      if (!(f.cod == base)) return false;
      for (Elem y : f.table) hit[y] = 1;
    }
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  };
  auto gens = detail::memoised<S, std::vector<Family<S>>>([s](const ObjectOf<S>& a) {
    std::vector<Family<S>> out{{identity(a)}};
    const std::size_t n = a.size();
    if (n > 16) return out;
    std::vector<std::pair<std::uint32_t, ArrowOf<S>>> subs;
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<Elem> elems;
      for (Elem x = 0; x < n; ++x)
        if (mask & (1u << x)) elems.push_back(x);
      try {
        subs.emplace_back(mask, inclusion(s, a, elems));
      } catch (const Error&) {
        // not closed under the ambient's structure
      }
    }
    const std::uint32_t full = (1u << n) - 1;
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = i + 1; j < subs.size(); ++j)
        if ((subs[i].first | subs[j].first) == full) out.push_back({subs[i].second, subs[j].second});
    return out;
  });
  return {"jointly-surjective", contains, gens};
}

/// Same class, with the identity family dropped from every generator list.
template <Ambient S>
FamilyPretopology<S> without_identity_generators(FamilyPretopology<S> j) {
  auto gens = j.generators;
  j.name += "-restricted";
  j.generators = [gens](const ObjectOf<S>& a) {
    std::vector<Family<S>> out;
    for (auto& fam : gens(a))
      if (!(fam.size() == 1 && is_identity(fam[0]))) out.push_back(std::move(fam));
    return out;
  };
  return j;
}

template <Ambient S>
FamilyPretopology<S> as_family(const Pretopology<S>& j) {
  auto contains = [j](const ObjectOf<S>& base, const Family<S>& fam) {
    return fam.size() == 1 && fam[0].cod == base && j.contains(fam[0]);
  };
  auto gens = [j](const ObjectOf<S>& a) {
    std::vector<Family<S>> out;
    for (auto& c : j.generators(a)) out.push_back({c});
    return out;
  };
  return {j.name, contains, gens};
}

/// The arrow out of the chosen coproduct of the family's domains.
template <Ambient S>
ArrowOf<S> copair(const S& s, const ObjectOf<S>& base, const Family<S>& fam) {
  ObjectOf<S> sum = s.subobject(base, {});
  std::vector<Elem> table;
  for (const auto& f : fam) {
    if (!(f.cod == base)) throw Error(ErrorKind::domain_mismatch, "copair: family member has the wrong codomain");
    sum = coproduct(s, sum, f.dom).sum;
    table.insert(table.end(), f.table.begin(), f.table.end());
  }
  return ArrowOf<S>{sum, base, std::move(table)};
}

namespace detail {

/// Calls visit(blocks) for every set partition of {0..n-1}, blocks ordered by
/// least element.
template <class Visit>
bool for_each_partition(std::size_t n, Visit&& visit) {
  std::vector<std::size_t> label(n, 0);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      std::vector<std::vector<Elem>> parts(blocks);
      for (Elem x = 0; x < n; ++x) parts[label[x]].push_back(x);
      return static_cast<bool>(visit(parts));
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      label[i] = b;
      if (!rec(i + 1, std::max(blocks, b + 1))) return false;
    }
    return true;
  };
  return rec(0, 0);
}

}  // namespace detail

/// The singleton pretopology of arrows out of coproducts of covering families.
/// Membership splits the domain into sub-objects and asks whether the family
/// of restrictions is covering.
template <Ambient S>
Pretopology<S> coproduct_pretopology(const S& s, const FamilyPretopology<S>& jfam) {
  if constexpr (!S::has_coproducts) {
    throw Error(ErrorKind::unsupported, std::string("coproducts unsupported in ") + s.name());
  } else {
    auto member = [s, jfam](const ArrowOf<S>& f) {
      bool found = false;
      detail::for_each_partition(f.dom.size(), [&](const std::vector<std::vector<Elem>>& parts) {
        Family<S> fam;
        try {
          for (const auto& part : parts) {
            auto inc = inclusion(s, f.dom, part);
            fam.push_back(compose(f, inc));
          }
        } catch (const Error&) {
          return true;
        }
        found = jfam.contains(f.cod, fam);
        return !found;
      });
      return found;
    };
    auto gens = [s, jfam](const ObjectOf<S>& a) {
      std::vector<ArrowOf<S>> out;
      for (const auto& fam : jfam.generators(a)) out.push_back(copair(s, a, fam));
      return out;
    };
    return {"coprod-of:" + jfam.name, member, gens};
  }
}

// ---------------------------------------------------------------------------
// Axioms

namespace detail {

template <Ambient S>
struct ArrowTable {
  std::vector<ObjectOf<S>> objects;
  std::vector<std::vector<std::vector<ArrowOf<S>>>> hom;  // hom[i][j] : objects[i] -> objects[j]

  ArrowTable(const S& s, std::size_t bound) : objects(s.objects_up_to(bound)) {
    hom.resize(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) {
      hom[i].resize(objects.size());
      for (std::size_t j = 0; j < objects.size(); ++j) hom[i][j] = all_arrows(s, objects[i], objects[j]);
    }
  }
};

}  // namespace detail

/// Iso-containment, pullback stability and closure under composition, over
/// every arrow between ambient objects up to `bound` elements.
template <Ambient S>
VerificationReport check_pretopology_axioms(const S& s, const Pretopology<S>& j, std::size_t bound = 4) {
  VerificationReport r("pretopology-axioms:" + j.name, bound);
  detail::ArrowTable<S> t(s, bound);
  const std::size_t n = t.objects.size();
  std::vector<std::vector<std::vector<char>>> in(n, std::vector<std::vector<char>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (const auto& f : t.hom[a][b]) in[a][b].push_back(j.contains(f) ? 1 : 0);
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < t.hom[a][b].size(); ++k) {
        const auto& f = t.hom[a][b][k];
        if (is_iso(f) && !r.expect(in[a][b][k], "isomorphism is not a cover", {{"iso", arrow_json(f)}}))
          return r;
      }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t k = 0; k < t.hom[u][a].size(); ++k) {
        if (!in[u][a][k]) continue;
        const auto& c = t.hom[u][a][k];
        for (std::size_t b = 0; b < n; ++b)
          for (const auto& g : t.hom[b][a]) {
            auto pb = pullback(s, g, c);
            if (!r.expect(j.contains(pb.p1), "pullback of a cover is not a cover",
                          {{"cover", arrow_json(c)}, {"along", arrow_json(g)}, {"pullback", arrow_json(pb.p1)}}))
              return r;
          }
        for (std::size_t v = 0; v < n; ++v)
          for (std::size_t l = 0; l < t.hom[v][u].size(); ++l) {
            if (!in[v][u][l]) continue;
            const auto& d = t.hom[v][u][l];
            if (!r.expect(j.contains(compose(c, d)), "composite of covers is not a cover",
                          {{"first", arrow_json(d)}, {"second", arrow_json(c)}}))
              return r;
          }
      }
  return r;
}

// ---------------------------------------------------------------------------
// J-epimorphisms

template <class O>
struct LocalSection {
  Arrow<O> cover;
  Arrow<O> lift;
};

/// Some generator cover of cod f together with a lift through f.
template <Ambient S>
std::optional<LocalSection<ObjectOf<S>>> J_epi_witness(const S& s, const ArrowOf<S>& f, const Pretopology<S>& j) {
  for (const auto& c : j.generators(f.cod))
    if (auto l = find_lift(s, c, f)) return LocalSection<ObjectOf<S>>{c, *l};
  return std::nullopt;
}

template <Ambient S>
bool is_J_epi(const S& s, const ArrowOf<S>& f, const Pretopology<S>& j) {
  return J_epi_witness(s, f, j).has_value();
}

/// Family version: some generator family all of whose members lift.
template <Ambient S>
bool is_J_epi(const S& s, const ArrowOf<S>& f, const FamilyPretopology<S>& j) {
  for (const auto& fam : j.generators(f.cod)) {
    bool all = true;
    for (const auto& c : fam)
      if (!find_lift(s, c, f)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

/// f and all its pullbacks along arrows from objects up to `bound` are J-epis.
template <Ambient S, class J>
bool is_universal_J_epi(const S& s, const ArrowOf<S>& f, const J& j, std::size_t bound = 4) {
  if (!is_J_epi(s, f, j)) return false;
  for (const auto& b : s.objects_up_to(bound)) {
    bool ok = true;
    search_arrows(s, b, f.cod, {}, [&](const ArrowOf<S>& g) {
      ok = is_J_epi(s, pullback(s, g, f).p1, j);
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

/// The bounded class of universal J-epimorphisms, with the generators of J.
template <Ambient S>
Pretopology<S> universal_epis(const S& s, const Pretopology<S>& j, std::size_t bound = 4) {
  return {j.name + "_un", [s, j, bound](const ArrowOf<S>& f) { return is_universal_J_epi(s, f, j, bound); },
          j.generators};
}

template <Ambient S>
VerificationReport check_saturated(const S& s, const Pretopology<S>& j, std::size_t bound = 4) {
  VerificationReport r("saturated:" + j.name, bound);
  detail::ArrowTable<S> t(s, bound);
  const std::size_t n = t.objects.size();
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& g : t.hom[b][c]) {
        if (j.contains(g)) continue;
        for (std::size_t a = 0; a < n; ++a)
          for (const auto& h : t.hom[a][b]) {
            auto gh = compose(g, h);
            if (!r.expect(!j.contains(gh), "composite is a cover but its second factor is not",
                          {{"h", arrow_json(h)}, {"g", arrow_json(g)}}))
              return r;
          }
      }
  return r;
}

template <Ambient S>
bool is_saturated(const S& s, const Pretopology<S>& j, std::size_t bound = 4) {
  return check_saturated(s, j, bound).passed();
}

template <Ambient S>
VerificationReport check_subcanonical(const S& s, const Pretopology<S>& j, std::size_t bound = 4) {
  VerificationReport r("subcanonical:" + j.name, bound);
  for (const auto& a : s.objects_up_to(bound))
    for (const auto& c : j.generators(a))
      if (!r.expect(is_effective(s, c), "cover is not effective", {{"cover", arrow_json(c)}})) return r;
  return r;
}

template <Ambient S>
bool is_subcanonical(const S& s, const Pretopology<S>& j, std::size_t bound = 4) {
  return check_subcanonical(s, j, bound).passed();
}

/// J inside K on J's generators, and K's generators universal J-epis.
template <Ambient S>
VerificationReport check_cofinal(const S& s, const Pretopology<S>& j, const Pretopology<S>& k, std::size_t bound = 4) {
  VerificationReport r("cofinal:" + j.name + "<" + k.name, bound);
  for (const auto& a : s.objects_up_to(bound)) {
    for (const auto& c : j.generators(a))
      if (!r.expect(k.contains(c), "J-cover outside K", {{"cover", arrow_json(c)}})) return r;
    for (const auto& c : k.generators(a))
      if (!r.expect(is_universal_J_epi(s, c, j, bound), "K-cover is not a universal J-epimorphism",
                    {{"cover", arrow_json(c)}}))
        return r;
  }
  return r;
}

template <Ambient S>
bool is_cofinal(const S& s, const Pretopology<S>& j, const Pretopology<S>& k, std::size_t bound = 4) {
  return check_cofinal(s, j, k, bound).passed();
}

// ---------------------------------------------------------------------------
// Covers of an object

/// Generator covers of `base`, with morphisms the arrows over `base`.
template <Ambient S>
struct CoverCategory {
  S ambient;
  ObjectOf<S> base;
  std::vector<ArrowOf<S>> covers;

  std::vector<ArrowOf<S>> morphisms(std::size_t from, std::size_t to) const {
    const auto& c = covers[from];
    const auto& d = covers[to];
    std::vector<std::vector<Elem>> cand(c.dom.size());
    for (Elem u = 0; u < c.dom.size(); ++u)
      for (Elem v = 0; v < d.dom.size(); ++v)
        if (d.table[v] == c.table[u]) cand[u].push_back(v);
    std::vector<ArrowOf<S>> out;
    search_arrows(ambient, c.dom, d.dom, cand, [&](const ArrowOf<S>& l) {
      out.push_back(l);
      return true;
    });
    return out;
  }
  bool has_morphism(std::size_t from, std::size_t to) const {
    return find_lift(ambient, covers[from], covers[to]).has_value();
  }
};

/// Covers sorted lexicographically by (domain size, table).
template <Ambient S>
CoverCategory<S> cover_category(const S& s, const Pretopology<S>& j, const ObjectOf<S>& a) {
  auto covers = j.generators(a);
  std::stable_sort(covers.begin(), covers.end(), detail::lex_less<ObjectOf<S>>);
  return {s, a, std::move(covers)};
}

/// Greedy weakly initial subset of the generator covers of A: repeatedly take
/// the cover mapping to the most not-yet-reached covers, earliest first.
template <Ambient S>
std::vector<ArrowOf<S>> wisc_witness(const S& s, const Pretopology<S>& j, const ObjectOf<S>& a) {
  auto cat = cover_category(s, j, a);
  const std::size_t n = cat.covers.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) reach[i][k] = i == k || cat.has_morphism(i, k);
  std::vector<char> done(n, 0);
  std::size_t left = n;
  std::vector<ArrowOf<S>> out;
  while (left > 0) {
    std::size_t best = n, best_gain = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t gain = 0;
      for (std::size_t k = 0; k < n; ++k) gain += !done[k] && reach[i][k];
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    out.push_back(cat.covers[best]);
    for (std::size_t k = 0; k < n; ++k)
      if (reach[best][k] && !done[k]) {
        done[k] = 1;
        --left;
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extensive and superextensive structure

/// Effectivity of a family: the base is the colimit of the members and their
/// pairwise pullbacks. Checked against the same probes as `is_effective`.
template <Ambient S>
bool is_effective_family(const S& s, const ObjectOf<S>& base, const Family<S>& fam, std::size_t probe_bound = 4) {
  // elements of the disjoint union of the members, glued along pairwise pullbacks
  std::vector<std::size_t> offset{0};
  for (const auto& f : fam) offset.push_back(offset.back() + f.dom.size());
  const std::size_t total = offset.back();
  std::vector<ElemPair> rel;
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t k = 0; k < fam.size(); ++k)
      for (auto [x, y] : pullback(s, fam[i], fam[k]).pairs)
        rel.emplace_back(static_cast<Elem>(offset[i] + x), static_cast<Elem>(offset[k] + y));
  auto cls = detail::classes_of(total, rel);
  std::vector<Elem> reps;
  for (Elem x = 0; x < total; ++x)
    if (cls[x] == x) reps.push_back(x);
  std::vector<Elem> image(total);
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (Elem x = 0; x < fam[i].dom.size(); ++x) image[offset[i] + x] = fam[i].table[x];

  auto probes = s.objects_up_to(probe_bound);
  probes.push_back(base);
  for (const auto& z : probes) {
    const std::size_t nz = z.size();
    if (nz == 0 && !reps.empty()) continue;
    std::vector<Elem> vals(reps.size(), 0);
    bool done = false;
    while (!done) {
      std::vector<Elem> h(total);
      for (Elem x = 0; x < total; ++x)
        h[x] = vals[static_cast<std::size_t>(std::lower_bound(reps.begin(), reps.end(), cls[x]) - reps.begin())];
      bool cocone = true;
      for (std::size_t i = 0; i < fam.size() && cocone; ++i)
        cocone = s.is_morphism(fam[i].dom, z,
                               std::span<const Elem>(h.data() + offset[i], fam[i].dom.size()));
      if (cocone) {
        std::vector<std::vector<Elem>> cand(base.size());
        std::vector<char> fixed(base.size(), 0);
        for (Elem x = 0; x < total; ++x) {
          if (!fixed[image[x]]) cand[image[x]] = {h[x]};
          fixed[image[x]] = 1;
        }
        for (Elem b = 0; b < base.size(); ++b)
          if (!fixed[b])
            for (Elem y = 0; y < nz; ++y) cand[b].push_back(y);
        std::size_t count = 0;
        search_arrows(s, base, z, cand, [&](const ArrowOf<S>&) { return ++count < 2; });
        if (count != 1) return false;
      }
      std::size_t i = 0;
      while (i < vals.size() && ++vals[i] == nz) vals[i++] = 0;
      if (i == vals.size()) done = true;
    }
  }
  return true;
}

/// The extensivity biconditional for coproducts of at most two objects, plus
/// strictness of the initial object. Every object involved has at most
/// `bound` elements; the X_i range over relabelling classes.
template <Ambient S>
VerificationReport check_extensivity(const S& s, std::size_t bound = 3) {
  VerificationReport r(std::string("extensivity:") + s.name(), bound);
  if constexpr (!S::has_coproducts) {
    r.skip(std::string("coproducts unsupported in ") + s.name());
    return r;
  } else {
    auto objects = s.objects_up_to(bound);
    const auto zero = s.subobject(s.terminal(), {});
    // strict initial object
    for (const auto& a : objects) {
      bool has_map = !all_arrows(s, a, zero).empty();
      if (!r.expect(!has_map || a.size() == 0, "arrow into the initial object from a non-initial object",
                    {{"object", a.size()}}))
        return r;
    }
    struct Leg {
      ArrowOf<S> x;  // X -> Z
      bool pulls_back;
    };
    auto monotone = [](const ArrowOf<S>& x, const ArrowOf<S>& a) {
      for (std::size_t e = 1; e < x.table.size(); ++e) {
        auto prev = std::make_pair(x.table[e - 1], a.table[e - 1]);
        auto cur = std::make_pair(x.table[e], a.table[e]);
        if (cur < prev) return false;
      }
      return true;
    };
    auto legs = [&](const ArrowOf<S>& z, const ArrowOf<S>& in, const ObjectOf<S>& ai) {
      std::vector<Leg> out;
      auto pb = pullback(s, z, in);
      for (const auto& xo : objects)
        for (const auto& x : all_arrows(s, xo, z.dom))
          for (const auto& a : all_arrows(s, xo, ai)) {
            if (!monotone(x, a) || !(compose(z, x) == compose(in, a))) continue;
            out.push_back({x, is_iso(mediate(pb, x, a))});
          }
      return out;
    };
    for (std::size_t i1 = 0; i1 < objects.size(); ++i1) {
      // one summand: the coproduct of A is A itself
      const auto& a1 = objects[i1];
      for (const auto& zo : objects)
        for (const auto& z : all_arrows(s, zo, a1))
          for (const auto& leg : legs(z, identity(a1), a1))
            if (!r.expect(leg.pulls_back == is_iso(leg.x), "unary extensivity fails",
                          {{"z", arrow_json(z)}, {"x", arrow_json(leg.x)}}))
              return r;
      for (std::size_t i2 = 0; i2 < objects.size(); ++i2) {
        const auto& a2 = objects[i2];
        if (a1.size() + a2.size() > bound) continue;
        auto cp = coproduct(s, a1, a2);
        for (const auto& zo : objects)
          for (const auto& z : all_arrows(s, zo, cp.sum)) {
            auto l1 = legs(z, cp.in1, a1);
            auto l2 = legs(z, cp.in2, a2);
            for (const auto& p : l1)
              for (const auto& q : l2) {
                std::vector<Elem> table = p.x.table;
                table.insert(table.end(), q.x.table.begin(), q.x.table.end());
                auto sum = coproduct(s, p.x.dom, q.x.dom).sum;
                bool coproduct_diagram = is_iso(ArrowOf<S>{sum, z.dom, table});
                if (!r.expect((p.pulls_back && q.pulls_back) == coproduct_diagram,
                              "squares are pullbacks iff the legs form a coproduct fails",
                              {{"z", arrow_json(z)}, {"x1", arrow_json(p.x)}, {"x2", arrow_json(q.x)}}))
                  return r;
              }
          }
      }
    }
    return r;
  }
}

/// Universal J-epis and universal `cj`-epis agree on every arrow between
/// objects up to `bound`.
template <Ambient S>
VerificationReport check_Jun_equals_coprodJun(const S& s, const FamilyPretopology<S>& jfam,
                                              const Pretopology<S>& cj, std::size_t bound = 4) {
  VerificationReport r("Jun=coprodJun:" + jfam.name, bound);
  auto objects = s.objects_up_to(bound);
  for (const auto& p : objects)
    for (const auto& a : objects)
      for (const auto& f : all_arrows(s, p, a)) {
        bool lhs = is_universal_J_epi(s, f, jfam, bound);
        bool rhs = is_universal_J_epi(s, f, cj, bound);
        r.expect(lhs == rhs, "classes disagree", {{"arrow", arrow_json(f)}, {"J_un", lhs}, {"coprodJ_un", rhs}});
      }
  return r;
}

/// Same, with the coproduct pretopology built from `jfam`.
template <Ambient S>
VerificationReport check_Jun_equals_coprodJun(const S& s, const FamilyPretopology<S>& jfam, std::size_t bound = 4) {
  if constexpr (!S::has_coproducts) {
    VerificationReport r("Jun=coprodJun:" + jfam.name, bound);
    r.skip(std::string("coproducts unsupported in ") + s.name());
    return r;
  } else {
    return check_Jun_equals_coprodJun(s, jfam, coproduct_pretopology(s, jfam), bound);
  }
}

/// A family pretopology is subcanonical iff its coproduct pretopology is;
/// each generator family is compared with its copairing.
template <Ambient S>
VerificationReport check_subcanonical_transfer(const S& s, const FamilyPretopology<S>& jfam, std::size_t bound = 4) {
  VerificationReport r("subcanonical-transfer:" + jfam.name, bound);
  if constexpr (!S::has_coproducts) {
    r.skip(std::string("coproducts unsupported in ") + s.name());
    return r;
  } else {
    for (const auto& a : s.objects_up_to(bound))
      for (const auto& fam : jfam.generators(a)) {
        bool direct = is_effective_family(s, a, fam);
        bool via_sum = is_effective(s, copair(s, a, fam));
        if (!r.expect(direct == via_sum, "family and copairing differ in effectivity",
                      {{"base", a.size()}, {"copair", arrow_json(copair(s, a, fam))}}))
          return r;
      }
    return r;
  }
}

}  // namespace anacat
