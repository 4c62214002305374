#pragma once

// Finite groups given by multiplication tables, and a small library of them.

#include <algorithm>
#include <map>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "anacat/ambient.hpp"

namespace anacat {

/// A group given either by its multiplication table or as a subgroup of a
/// product G x H listed by pairs.
struct FiniteGroup {
  struct Pairs {
    std::shared_ptr<const FiniteGroup> left, right;
    std::vector<ElemPair> pairs;
    std::vector<Elem> index;  // a |H| + b -> position, or none
  };
  static constexpr Elem none = 0xffffffffu;

  std::vector<std::vector<Elem>> mul;  // empty when `sub` is set
  Elem unit = 0;
  std::vector<Elem> inv;
  std::string label;
  std::uint64_t hash = 0;
  std::shared_ptr<const Pairs> sub;
  std::vector<Elem> generators;

  std::size_t order() const { return sub ? sub->pairs.size() : mul.size(); }
  Elem op(Elem a, Elem b) const {
    if (!sub) return mul[a][b];
    const auto& [a1, a2] = sub->pairs[a];
    const auto& [b1, b2] = sub->pairs[b];
    return sub->index[sub->left->op(a1, b1) * sub->right->order() + sub->right->op(a2, b2)];
  }

  bool operator==(const FiniteGroup& o) const {
    if (order() != o.order()) return false;
    if (!sub && !o.sub) return hash == o.hash && mul == o.mul;
    if (sub && o.sub && sub->pairs == o.sub->pairs && same(sub->left, o.sub->left) && same(sub->right, o.sub->right))
      return true;
    for (Elem a = 0; a < order(); ++a)
      for (Elem b = 0; b < order(); ++b)
        if (op(a, b) != o.op(a, b)) return false;
    return true;
  }

  static bool same(const std::shared_ptr<const FiniteGroup>& a, const std::shared_ptr<const FiniteGroup>& b) {
    return a == b || *a == *b;
  }

  static std::uint64_t table_hash(const std::vector<std::vector<Elem>>& mul) {
    std::uint64_t h = 1469598103934665603ull ^ mul.size();
    for (const auto& row : mul)
      for (Elem x : row) h = (h ^ x) * 1099511628211ull;
    return h;
  }

  /// Checks the group axioms and fills in the identity and inverses.
  /// Associativity is skipped for tables inherited from a known group.
  static FiniteGroup from_table(std::vector<std::vector<Elem>> mul, std::string label = {},
                                bool check_associative = true) {
    const std::size_t n = mul.size();
    if (n == 0) throw Error(ErrorKind::validation, "a group has at least one element");
    for (const auto& row : mul) {
      if (row.size() != n) throw Error(ErrorKind::validation, "multiplication table is not square");
      for (Elem x : row)
        if (x >= n) throw Error(ErrorKind::validation, "multiplication table leaves the group");
    }
    for (Elem a = 0; a < n && check_associative; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
            throw Error(ErrorKind::validation, "multiplication is not associative");
    const std::uint64_t h = table_hash(mul);
    FiniteGroup g{std::move(mul), 0, {}, std::move(label), h, nullptr, {}};
    bool found = false;
    for (Elem e = 0; e < n && !found; ++e) {
      bool ok = true;
      for (Elem a = 0; a < n && ok; ++a) ok = g.mul[e][a] == a && g.mul[a][e] == a;
      if (ok) {
        g.unit = e;
        found = true;
      }
    }
    if (!found) throw Error(ErrorKind::validation, "no identity element");
    g.inv.assign(n, 0);
    for (Elem a = 0; a < n; ++a) {
      auto it = std::find(g.mul[a].begin(), g.mul[a].end(), g.unit);
      if (it == g.mul[a].end()) throw Error(ErrorKind::validation, "element without inverse");
      g.inv[a] = static_cast<Elem>(it - g.mul[a].begin());
      if (g.mul[g.inv[a]][a] != g.unit) throw Error(ErrorKind::validation, "one-sided inverse");
    }
    g.generators = g.generating_set();
    return g;
  }

  /// The subgroup of left x right on `pairs`, which must be closed under
  /// the componentwise product.
  static FiniteGroup from_pairs(std::shared_ptr<const FiniteGroup> left, std::shared_ptr<const FiniteGroup> right,
                                std::vector<ElemPair> pairs, std::string label = {}) {
    const std::size_t nr = right->order();
    auto p = std::make_shared<Pairs>();
    p->index.assign(left->order() * nr, none);
    for (Elem k = 0; k < pairs.size(); ++k) p->index[pairs[k].first * nr + pairs[k].second] = k;
    std::uint64_t h = 1099511628211ull ^ pairs.size() ^ (left->hash * 31) ^ (right->hash * 131);
    for (auto [a, b] : pairs) h = (h ^ (a * nr + b)) * 1099511628211ull;
    const Elem unit = p->index[left->unit * nr + right->unit];
    if (unit == none) throw Error(ErrorKind::validation, "pair set misses the unit");
    std::vector<Elem> inv(pairs.size());
    for (Elem k = 0; k < pairs.size(); ++k) {
      inv[k] = p->index[left->inv[pairs[k].first] * nr + right->inv[pairs[k].second]];
      if (inv[k] == none) throw Error(ErrorKind::validation, "pair set is not closed under inverses");
    }
    p->left = std::move(left);
    p->right = std::move(right);
    p->pairs = std::move(pairs);
    FiniteGroup g{{}, unit, std::move(inv), std::move(label), h, std::move(p), {}};
    g.generators = g.generating_set();
    return g;
  }

  /// Greedy generating set; each element is either in the span so far or added.
  std::vector<Elem> generating_set() const {
    const std::size_t n = order();
    std::vector<Elem> gens, members{unit};
    std::vector<char> in(n, 0);
    in[unit] = 1;
    for (Elem x = 0; x < n; ++x) {
      if (in[x]) continue;
      gens.push_back(x);
      for (std::size_t i = 0; i < members.size(); ++i)
        for (Elem s : gens) {
          Elem y = op(members[i], s);
          if (!in[y]) {
            in[y] = 1;
            members.push_back(y);
          }
        }
    }
    return gens;
  }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

namespace groups {

namespace detail {

/// Live groups by table hash, so that equal tables share one pointer.
struct Interner {
  std::mutex mu;
  std::unordered_multimap<std::uint64_t, std::weak_ptr<const FiniteGroup>> live;
  std::size_t inserts = 0;
};

inline Interner& interner() {
  static Interner in;
  return in;
}

}  // namespace detail

inline GroupPtr make(std::vector<std::vector<Elem>> mul, std::string label, bool check_associative = true) {
  const std::uint64_t h = FiniteGroup::table_hash(mul);
  auto& in = detail::interner();
  {
    std::lock_guard<std::mutex> lock(in.mu);
    auto [lo, hi] = in.live.equal_range(h);
    for (auto it = lo; it != hi; ++it)
      if (auto g = it->second.lock(); g && !g->sub && g->mul == mul) return g;
  }
  auto g = std::make_shared<const FiniteGroup>(
      FiniteGroup::from_table(std::move(mul), std::move(label), check_associative));
  std::lock_guard<std::mutex> lock(in.mu);
  in.live.emplace(h, g);
  if (++in.inserts % 4096 == 0)
    std::erase_if(in.live, [](const auto& kv) { return kv.second.expired(); });
  return g;
}

inline GroupPtr cyclic(std::size_t n) {
  std::vector<std::vector<Elem>> mul(n, std::vector<Elem>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) mul[a][b] = static_cast<Elem>((a + b) % n);
  return make(std::move(mul), "Z" + std::to_string(n));
}

inline GroupPtr trivial() { return cyclic(1); }

/// Pairs (g, h) indexed g * |H| + h.
inline GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order(), m = h.order();
  std::vector<std::vector<Elem>> mul(n * m, std::vector<Elem>(n * m));
  for (Elem a = 0; a < n * m; ++a)
    for (Elem b = 0; b < n * m; ++b)
      mul[a][b] = static_cast<Elem>(g.op(a / m, b / m) * m + h.op(a % m, b % m));
  return make(std::move(mul), g.label + "x" + h.label);
}

/// Permutations of {0..n-1} in lexicographic order; p*q = p after q.
inline GroupPtr symmetric(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, GroupPtr> made;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = made.find(n); it != made.end()) return it->second;
  std::vector<std::vector<Elem>> perms;
  std::vector<Elem> p(n);
  std::iota(p.begin(), p.end(), Elem{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<Elem>, Elem> idx;
  for (Elem i = 0; i < perms.size(); ++i) idx[perms[i]] = i;
  std::vector<std::vector<Elem>> mul(perms.size(), std::vector<Elem>(perms.size()));
  for (Elem a = 0; a < perms.size(); ++a)
    for (Elem b = 0; b < perms.size(); ++b) {
      std::vector<Elem> c(n);
      for (Elem x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      mul[a][b] = idx.at(c);
    }
  return made[n] = make(std::move(mul), "S" + std::to_string(n));
}

/// r^i s^j encoded as i + n*j, with s r s = r^-1.
inline GroupPtr dihedral(std::size_t n) {
  const std::size_t order = 2 * n;
  std::vector<std::vector<Elem>> mul(order, std::vector<Elem>(order));
  for (Elem a = 0; a < order; ++a)
    for (Elem b = 0; b < order; ++b) {
      std::size_t i = a % n, j = a / n, k = b % n, l = b / n;
      std::size_t r = j == 0 ? (i + k) % n : (i + n - k) % n;
      mul[a][b] = static_cast<Elem>(r + n * ((j + l) % 2));
    }
  return make(std::move(mul), "D" + std::to_string(order));
}

/// +-1, +-i, +-j, +-k encoded as unit + 4*sign.
inline GroupPtr quaternion() {
  // unit product table on {1,i,j,k}: result unit and sign flip
  static constexpr int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int neg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<Elem>> mul(8, std::vector<Elem>(8));
  for (Elem a = 0; a < 8; ++a)
    for (Elem b = 0; b < 8; ++b) {
      int sign = (a / 4 + b / 4 + neg[a % 4][b % 4]) % 2;
      mul[a][b] = static_cast<Elem>(unit[a % 4][b % 4] + 4 * sign);
    }
  return make(std::move(mul), "Q8");
}

/// Named groups accepted by the instance loader.
inline GroupPtr builtin(const std::string& name) {
  if (name == "1" || name == "Z1") return trivial();
  if (name == "Z2") return cyclic(2);
  if (name == "Z3") return cyclic(3);
  if (name == "Z4") return cyclic(4);
  if (name == "Z2xZ2") return direct_product(*cyclic(2), *cyclic(2));
  if (name == "S3") return symmetric(3);
  throw Error(ErrorKind::parse, "unknown built-in group '" + name + "'");
}

/// One representative of every isomorphism class of groups of order <= bound
/// (bound at most 8).
inline std::vector<GroupPtr> all_up_to(std::size_t bound) {
  std::vector<GroupPtr> out;
  auto add = [&](std::size_t order, GroupPtr g) {
    if (order <= bound) out.push_back(std::move(g));
  };
  add(1, trivial());
  add(2, cyclic(2));
  add(3, cyclic(3));
  add(4, cyclic(4));
  add(4, direct_product(*cyclic(2), *cyclic(2)));
  add(5, cyclic(5));
  add(6, cyclic(6));
  add(6, symmetric(3));
  add(7, cyclic(7));
  if (bound >= 8) {
    out.push_back(cyclic(8));
    out.push_back(direct_product(*cyclic(4), *cyclic(2)));
    out.push_back(direct_product(*direct_product(*cyclic(2), *cyclic(2)), *cyclic(2)));
    out.push_back(dihedral(4));
    out.push_back(quaternion());
  }
  if (bound > 8) throw Error(ErrorKind::unsupported, "group enumeration is limited to order 8");
  return out;
}

}  // namespace groups
}  // namespace anacat
