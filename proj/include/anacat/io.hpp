#pragma once

// JSON instance files: loading with reference resolution and load-time
// validation, and dumping back to the same schema.

#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "anacat/ana.hpp"
#include "anacat/crossed_module.hpp"
#include "anacat/fingrp.hpp"
#include "anacat/fingset.hpp"
#include "anacat/finset.hpp"
#include "anacat/internal.hpp"
#include "anacat/report.hpp"
#include "anacat/sites.hpp"

namespace anacat::io {

/// Failure while loading; `location` is a JSON pointer into the file.
struct LoadError : Error {
  std::string location;
  json witness;
  LoadError(ErrorKind k, std::string where, const std::string& msg, json w = json::object())
      : Error(k, (where.empty() ? std::string("/") : where) + ": " + msg),
        location(std::move(where)),
        witness(std::move(w)) {}
};

template <Ambient S>
struct Instance {
  S amb;
  std::string tag;
  std::string pretopology = "surj";
  std::map<std::string, GroupPtr> groups;
  std::map<std::string, ObjectOf<S>> objects;
  std::map<std::string, ArrowOf<S>> maps;
  std::map<std::string, Category<S>> categories;
  std::map<std::string, Functor<S>> functors;
  std::map<std::string, NatTrans<S>> transformations;
  std::map<std::string, Anafunctor<S>> anafunctors;
  std::map<std::string, AnaTransformation<S>> ana_transformations;
  std::map<std::string, CrossedModule> crossed_modules;

  Instance(S a, std::string t) : amb(std::move(a)), tag(std::move(t)) {}

  std::size_t declarations() const {
    return objects.size() + maps.size() + categories.size() + functors.size() + transformations.size() +
           anafunctors.size() + ana_transformations.size() + crossed_modules.size();
  }
};

using AnyInstance = std::variant<Instance<FinSet>, Instance<FinGrp>, Instance<FinGSet>>;

/// Pretopologies addressable by name on the command line and in files.
template <Ambient S>
Pretopology<S> pretopology_by_name(const S& amb, const std::string& name, std::size_t gen_bound = 0) {
  const std::size_t gen = gen_bound > 0 ? gen_bound : std::is_same_v<S, FinGrp> ? 8 : 4;
  if (name == "triv") return triv(amb);
  if (name == "surj" || name == "epi" || name == "epi-grp") return surjections(amb, gen, name);
  if (name == "split") return split_epis(amb, gen);
  if (name == "all") return all_maps(amb, gen);
  throw Error(ErrorKind::usage, "unknown pretopology '" + name + "' (expected triv, surj, split or all)");
}

namespace detail {

inline std::string join(const std::string& at, const std::string& key) { return at + "/" + key; }

inline const json& field(const json& j, const std::string& at, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw LoadError(ErrorKind::parse, at, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t natural(const json& j, const std::string& at) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::size_t>(j.get<std::int64_t>());
  throw LoadError(ErrorKind::parse, at, "expected a non-negative integer");
}

inline std::vector<Elem> elems(const json& j, const std::string& at) {
  if (!j.is_array()) throw LoadError(ErrorKind::parse, at, "expected an array of integers");
  std::vector<Elem> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto loc = join(at, std::to_string(i));
    const std::size_t v = natural(j[i], loc);
    if (v > std::numeric_limits<Elem>::max()) throw LoadError(ErrorKind::parse, loc, "element out of range");
    out.push_back(static_cast<Elem>(v));
  }
  return out;
}

inline std::vector<std::vector<Elem>> table2(const json& j, const std::string& at) {
  if (!j.is_array()) throw LoadError(ErrorKind::parse, at, "expected an array of rows");
  std::vector<std::vector<Elem>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(elems(j[i], join(at, std::to_string(i))));
  return out;
}

template <class T>
const T& lookup(const std::map<std::string, T>& m, const json& ref, const std::string& at, const char* what) {
  if (!ref.is_string()) throw LoadError(ErrorKind::parse, at, std::string("expected the name of a ") + what);
  auto it = m.find(ref.get<std::string>());
  if (it == m.end())
    throw LoadError(ErrorKind::parse, at, std::string("undeclared ") + what + " '" + ref.get<std::string>() + "'",
                    {{"undeclared", ref.get<std::string>()}});
  return it->second;
}

template <Ambient S>
class Loader {
 public:
  explicit Loader(Instance<S>& in) : in_(in) {}

  GroupPtr group(const json& j, const std::string& at) {
    if (j.is_string()) {
      auto name = j.get<std::string>();
      if (auto it = in_.groups.find(name); it != in_.groups.end()) return it->second;
      try {
        return groups::builtin(name);
      } catch (const Error&) {
        throw LoadError(ErrorKind::parse, at, "undeclared group '" + name + "'", {{"undeclared", name}});
      }
    }
    auto mul = table2(field(j, at, "mul"), join(at, "mul"));
    if (natural(field(j, at, "order"), join(at, "order")) != mul.size())
      throw LoadError(ErrorKind::parse, at, "order does not match the table");
    try {
      return groups::make(std::move(mul), "G");
    } catch (const Error& e) {
      throw LoadError(ErrorKind::validation, at, e.what());
    }
  }

  ObjectOf<S> object(const json& j, const std::string& at) {
    if (j.is_string()) return lookup(in_.objects, j, at, "object");
    if constexpr (std::is_same_v<S, FinSet>) {
      return FinSet::set(natural(field(j, at, "size"), join(at, "size")));
    } else if constexpr (std::is_same_v<S, FinGrp>) {
      return FinGrp::of(group(j.contains("group") ? j.at("group") : j, join(at, j.contains("group") ? "group" : "")));
    } else {
      std::size_t n = natural(field(j, at, "size"), join(at, "size"));
      std::vector<std::vector<Elem>> act;
      if (j.contains("action")) {
        act = table2(j.at("action"), join(at, "action"));
      } else {
        act.assign(in_.amb.group->order(), std::vector<Elem>(n));
        for (auto& row : act) std::iota(row.begin(), row.end(), Elem{0});
      }
      try {
        return in_.amb.gset(n, std::move(act));
      } catch (const Error& e) {
        throw LoadError(ErrorKind::validation, at, e.what());
      }
    }
  }

  /// A map given by name or inline; `dom`/`cod` may be implied by context.
  ArrowOf<S> arrow(const json& j, const std::string& at, const ObjectOf<S>* dom = nullptr,
                   const ObjectOf<S>* cod = nullptr) {
    ArrowOf<S> out;
    if (j.is_string()) {
      out = lookup(in_.maps, j, at, "map");
    } else {
      if (!j.is_object()) throw LoadError(ErrorKind::parse, at, "expected a map name or a map object");
      auto d = j.contains("dom") ? object(j.at("dom"), join(at, "dom")) : dom ? *dom : object(field(j, at, "dom"), at);
      auto c = j.contains("cod") ? object(j.at("cod"), join(at, "cod")) : cod ? *cod : object(field(j, at, "cod"), at);
      auto table = elems(field(j, at, "table"), join(at, "table"));
      try {
        out = make_arrow(in_.amb, d, c, std::move(table));
      } catch (const Error& e) {
        throw LoadError(ErrorKind::validation, at, e.what());
      }
    }
    if (dom && !(out.dom == *dom)) throw LoadError(ErrorKind::validation, at, "map has the wrong domain");
    if (cod && !(out.cod == *cod)) throw LoadError(ErrorKind::validation, at, "map has the wrong codomain");
    return out;
  }

  Category<S> category(const json& j, const std::string& at) {
    if (j.is_string()) return lookup(in_.categories, j, at, "category");
    auto obj = object(field(j, at, "obj"), join(at, "obj"));
    auto arr = object(field(j, at, "arr"), join(at, "arr"));
    Category<S> x{obj, arr, arrow(field(j, at, "s"), join(at, "s"), &arr, &obj),
                  arrow(field(j, at, "t"), join(at, "t"), &arr, &obj), arrow(field(j, at, "e"), join(at, "e"), &obj, &arr),
                  {}, std::nullopt};
    const auto& c = x.composable(in_.amb);
    std::vector<Elem> m(c.size());
    std::vector<char> seen(c.size(), 0);
    const auto mat = join(at, "m");
    const auto& pairs = field(field(j, at, "m"), mat, "pairs");
    if (!pairs.is_array()) throw LoadError(ErrorKind::parse, join(mat, "pairs"), "expected an array of triples");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto loc = join(join(mat, "pairs"), std::to_string(i));
      auto t = elems(pairs[i], loc);
      if (t.size() != 3) throw LoadError(ErrorKind::parse, loc, "expected [g, f, g after f]");
      auto k = t[0] < arr.size() && t[1] < arr.size() ? c.find(t[0], t[1]) : std::nullopt;
      if (!k) throw LoadError(ErrorKind::validation, loc, "pair is not composable", {{"g", t[0]}, {"f", t[1]}});
      if (seen[*k]) throw LoadError(ErrorKind::validation, loc, "pair listed twice", {{"g", t[0]}, {"f", t[1]}});
      if (t[2] >= arr.size()) throw LoadError(ErrorKind::validation, loc, "composite is not an arrow");
      seen[*k] = 1;
      m[*k] = t[2];
    }
    for (Elem k = 0; k < c.size(); ++k)
      if (!seen[k])
        throw LoadError(ErrorKind::validation, mat, "composable pair missing from m",
                        {{"g", c.pairs[k].first}, {"f", c.pairs[k].second}});
    try {
      x.m = make_arrow(in_.amb, c.apex, arr, std::move(m));
    } catch (const Error& e) {
      throw LoadError(ErrorKind::validation, mat, e.what());
    }
    if (j.contains("inv")) x.inv = arrow(j.at("inv"), join(at, "inv"), &arr, &arr);
    expect_valid(validate_category(in_.amb, x), at);
    return x;
  }

  Functor<S> functor(const json& j, const std::string& at) {
    if (j.is_string()) return lookup(in_.functors, j, at, "functor");
    auto dom = category(field(j, at, "dom"), join(at, "dom"));
    auto cod = category(field(j, at, "cod"), join(at, "cod"));
    Functor<S> f{dom, cod, arrow(field(j, at, "f0"), join(at, "f0"), &dom.obj, &cod.obj),
                 arrow(field(j, at, "f1"), join(at, "f1"), &dom.arr, &cod.arr)};
    expect_valid(validate_functor(in_.amb, f), at);
    return f;
  }

  NatTrans<S> transformation(const json& j, const std::string& at) {
    if (j.is_string()) return lookup(in_.transformations, j, at, "transformation");
    auto src = functor(field(j, at, "src"), join(at, "src"));
    auto tgt = functor(field(j, at, "tgt"), join(at, "tgt"));
    NatTrans<S> a{src, tgt, arrow(field(j, at, "comp"), join(at, "comp"), &src.dom.obj, &src.cod.arr)};
    expect_valid(validate_transformation(in_.amb, a), at);
    return a;
  }

  Anafunctor<S> anafunctor(const json& j, const std::string& at) {
    if (j.is_string()) return lookup(in_.anafunctors, j, at, "anafunctor");
    Anafunctor<S> f;
    if (j.contains("functor")) {
      f = from_functor(functor(j.at("functor"), join(at, "functor")));
    } else {
      auto src = category(field(j, at, "src"), join(at, "src"));
      auto tgt = category(field(j, at, "tgt"), join(at, "tgt"));
      auto cover = arrow(field(j, at, "cover"), join(at, "cover"), nullptr, &src.obj);
      auto xu = base_change(in_.amb, src, cover);
      Functor<S> fun{xu, tgt, arrow(field(j, at, "f0"), join(at, "f0"), &xu.obj, &tgt.obj),
                     arrow(field(j, at, "f1"), join(at, "f1"), &xu.arr, &tgt.arr)};
      f = Anafunctor<S>{src, tgt, cover, fun};
    }
    expect_valid(validate_anafunctor(in_.amb, f, pretopology_by_name(in_.amb, in_.pretopology)), at);
    return f;
  }

  AnaTransformation<S> ana_transformation(const json& j, const std::string& at) {
    if (j.is_string()) return lookup(in_.ana_transformations, j, at, "ana-transformation");
    auto src = anafunctor(field(j, at, "src"), join(at, "src"));
    auto tgt = anafunctor(field(j, at, "tgt"), join(at, "tgt"));
    if (!(src.src == tgt.src) || !(src.tgt == tgt.tgt))
      throw LoadError(ErrorKind::validation, at, "anafunctors are not parallel");
    auto uv = pullback(in_.amb, src.cover, tgt.cover);
    AnaTransformation<S> a{src, tgt, arrow(field(j, at, "comp"), join(at, "comp"), &uv.apex, &src.tgt.arr)};
    expect_valid(validate_ana_transformation(in_.amb, a), at);
    return a;
  }

  CrossedModule crossed_module(const json& j, const std::string& at) {
    auto g = group(field(j, at, "g"), join(at, "g"));
    auto h = group(field(j, at, "h"), join(at, "h"));
    auto t = elems(field(j, at, "t"), join(at, "t"));
    CrossedModule xm = j.contains("action")
                           ? CrossedModule{g, h, std::move(t), table2(j.at("action"), join(at, "action"))}
                           : trivial_action_xmod(g, h, std::move(t));
    expect_valid(validate_crossed_module(xm), at);
    return xm;
  }

 private:
  static void expect_valid(const VerificationReport& r, const std::string& at) {
    if (!r.passed()) throw LoadError(ErrorKind::validation, at, r.law + ": " + r.detail, r.witness);
  }

  Instance<S>& in_;
};

template <class T, class F>
void declare(const json& file, const char* section, std::map<std::string, T>& into, F&& parse) {
  if (!file.contains(section)) return;
  const auto& sec = file.at(section);
  const std::string at = std::string("/") + section;
  if (!sec.is_object()) throw LoadError(ErrorKind::parse, at, "expected an object of named declarations");
  for (const auto& [name, body] : sec.items()) {
    if (into.count(name)) throw LoadError(ErrorKind::parse, join(at, name), "duplicate name '" + name + "'");
    into.emplace(name, parse(body, join(at, name)));
  }
}

template <Ambient S>
Instance<S> load_into(Instance<S> in, const json& file) {
  if (file.contains("pretopology")) {
    if (!file.at("pretopology").is_string()) throw LoadError(ErrorKind::parse, "/pretopology", "expected a name");
    in.pretopology = file.at("pretopology").get<std::string>();
    try {
      pretopology_by_name(in.amb, in.pretopology);
    } catch (const Error& e) {
      throw LoadError(ErrorKind::parse, "/pretopology", e.what());
    }
  }
  Loader<S> ld(in);
  declare(file, "objects", in.objects, [&](const json& j, const std::string& at) { return ld.object(j, at); });
  declare(file, "maps", in.maps, [&](const json& j, const std::string& at) { return ld.arrow(j, at); });
  if constexpr (std::is_same_v<S, FinGrp>) {
    declare(file, "crossed_modules", in.crossed_modules,
            [&](const json& j, const std::string& at) { return ld.crossed_module(j, at); });
    for (const auto& [name, xm] : in.crossed_modules) {
      auto x = xmod_to_groupoid(xm);
      auto r = validate_groupoid(in.amb, x);
      if (!r.passed()) throw LoadError(ErrorKind::validation, "/crossed_modules/" + name, r.detail, r.witness);
      in.categories.emplace(name, std::move(x));
    }
  } else if (file.contains("crossed_modules")) {
    throw LoadError(ErrorKind::parse, "/crossed_modules", "crossed modules need the fingrp ambient");
  }
  declare(file, "categories", in.categories, [&](const json& j, const std::string& at) { return ld.category(j, at); });
  declare(file, "functors", in.functors, [&](const json& j, const std::string& at) { return ld.functor(j, at); });
  declare(file, "transformations", in.transformations,
          [&](const json& j, const std::string& at) { return ld.transformation(j, at); });
  declare(file, "anafunctors", in.anafunctors,
          [&](const json& j, const std::string& at) { return ld.anafunctor(j, at); });
  declare(file, "ana_transformations", in.ana_transformations,
          [&](const json& j, const std::string& at) { return ld.ana_transformation(j, at); });
  return in;
}

}  // namespace detail

inline AnyInstance load(const json& file) {
  if (!file.is_object()) throw LoadError(ErrorKind::parse, "", "an instance file is a JSON object");
  static const std::vector<std::string> known{"ambient",    "pretopology", "groups",      "objects",
                                              "maps",       "categories",  "functors",    "transformations",
                                              "anafunctors", "ana_transformations", "crossed_modules"};
  for (const auto& [key, _] : file.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw LoadError(ErrorKind::parse, "/" + key, "unknown section '" + key + "'");
  const auto& tag_json = detail::field(file, "", "ambient");
  if (!tag_json.is_string()) throw LoadError(ErrorKind::parse, "/ambient", "expected an ambient tag");
  const auto tag = tag_json.get<std::string>();

  std::map<std::string, GroupPtr> named;
  if (file.contains("groups")) {
    Instance<FinGrp> scratch{FinGrp{}, "fingrp"};
    detail::Loader<FinGrp> ld(scratch);
    if (!file.at("groups").is_object()) throw LoadError(ErrorKind::parse, "/groups", "expected named groups");
    for (const auto& [name, body] : file.at("groups").items()) {
      auto g = ld.group(body, "/groups/" + name);
      scratch.groups.emplace(name, g);
      named.emplace(name, g);
    }
  }
  if (tag == "finset") {
    Instance<FinSet> in{FinSet{}, tag};
    in.groups = named;
    return detail::load_into(std::move(in), file);
  }
  if (tag == "fingrp") {
    Instance<FinGrp> in{FinGrp{}, tag};
    in.groups = named;
    return detail::load_into(std::move(in), file);
  }
  if (tag.rfind("fingset:", 0) == 0) {
    const auto gname = tag.substr(8);
    GroupPtr g;
    if (auto it = named.find(gname); it != named.end())
      g = it->second;
    else
      try {
        g = groups::builtin(gname);
      } catch (const Error&) {
        throw LoadError(ErrorKind::parse, "/ambient", "undeclared group '" + gname + "'", {{"undeclared", gname}});
      }
    Instance<FinGSet> in{FinGSet{g}, tag};
    in.groups = named;
    return detail::load_into(std::move(in), file);
  }
  throw LoadError(ErrorKind::parse, "/ambient", "unknown ambient '" + tag + "' (finset, fingrp or fingset:<group>)");
}

inline AnyInstance load_text(const std::string& text) {
  json file;
  try {
    file = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LoadError(ErrorKind::parse, "", std::string("syntax error: ") + e.what(), {{"byte", e.byte}});
  }
  return load(file);
}

inline AnyInstance load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw LoadError(ErrorKind::usage, "", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return load_text(ss.str());
}

// ---------------------------------------------------------------------------
// Dumping

template <Ambient S>
json object_json(const S& amb, const ObjectOf<S>& a) {
  if constexpr (std::is_same_v<S, FinSet>) {
    (void)amb;
    return json{{"size", a.size()}};
  } else if constexpr (std::is_same_v<S, FinGrp>) {
    (void)amb;
    const auto& g = *a.group;
    std::vector<std::vector<Elem>> mul(g.order(), std::vector<Elem>(g.order()));
    for (Elem x = 0; x < g.order(); ++x)
      for (Elem y = 0; y < g.order(); ++y) mul[x][y] = g.op(x, y);
    return json{{"order", g.order()}, {"mul", mul}};
  } else {
    (void)amb;
    return json{{"size", a.size()}, {"action", a.act}};
  }
}

template <Ambient S>
json map_json(const S& amb, const ArrowOf<S>& f) {
  return json{{"dom", object_json(amb, f.dom)}, {"cod", object_json(amb, f.cod)}, {"table", f.table}};
}

/// A category with its objects inlined and m listed extensionally; groupoids
/// carry their inverse as "inv".
template <Ambient S>
json category_json(const S& amb, const Category<S>& x) {
  json pairs = json::array();
  const auto& c = x.composable(amb);
  for (Elem k = 0; k < c.size(); ++k) pairs.push_back({c.pairs[k].first, c.pairs[k].second, x.m(k)});
  json out{{"obj", object_json(amb, x.obj)},
           {"arr", object_json(amb, x.arr)},
           {"s", json{{"table", x.s.table}}},
           {"t", json{{"table", x.t.table}}},
           {"e", json{{"table", x.e.table}}},
           {"m", json{{"pairs", pairs}}}};
  if (x.inv) out["inv"] = json{{"table", x.inv->table}};
  return out;
}

template <Ambient S>
json functor_json(const S& amb, const Functor<S>& f) {
  return json{{"dom", category_json(amb, f.dom)},
              {"cod", category_json(amb, f.cod)},
              {"f0", json{{"table", f.f0.table}}},
              {"f1", json{{"table", f.f1.table}}}};
}

template <Ambient S>
json anafunctor_json(const S& amb, const Anafunctor<S>& f) {
  return json{{"src", category_json(amb, f.src)},
              {"tgt", category_json(amb, f.tgt)},
              {"cover", map_json(amb, f.cover)},
              {"f0", json{{"table", f.functor.f0.table}}},
              {"f1", json{{"table", f.functor.f1.table}}}};
}

template <Ambient S>
json ana_transformation_json(const S& amb, const AnaTransformation<S>& a) {
  return json{{"src", anafunctor_json(amb, a.src)},
              {"tgt", anafunctor_json(amb, a.tgt)},
              {"comp", json{{"table", a.comp.table}}}};
}

template <Ambient S>
json splitting_json(const S& amb, const LocalSplitting<S>& sp) {
  return json{{"cover", map_json(amb, sp.cover)},
              {"section", json{{"f0", sp.section.f0.table}, {"f1", sp.section.f1.table}}},
              {"iota", sp.iota.comp.table}};
}

}  // namespace anacat::io
