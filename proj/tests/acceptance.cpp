// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "anacat_cli.hpp"

using namespace anacat;

namespace {

struct Outcome {
  bool ok = false;
  std::string note;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = o.ok && secs < limit_s;
  if (!ok) ++failures;
  std::printf("%s  %2d  %-34s %7.2fs / %3.0fs  %s\n", ok ? "PASS" : "FAIL", id, title, secs, limit_s, o.note.c_str());
  std::fflush(stdout);
}

Outcome from(const VerificationReport& r) {
  return {r.passed(), std::to_string(r.instances) + " checks" + (r.passed() ? "" : ": " + r.detail)};
}

Outcome all_pass(const SuiteReport& s, std::initializer_list<std::string_view> ids = {}) {
  std::size_t checks = 0, used = 0;
  std::string bad;
  for (const auto& l : s.laws) {
    if (ids.size() > 0 && std::find(ids.begin(), ids.end(), l.law) == ids.end()) continue;
    ++used;
    checks += l.instances;
    if (l.failed() && bad.empty()) bad = l.law + ": " + l.detail;
  }
  if (used == 0) return {false, "no laws selected"};
  return {bad.empty(), std::to_string(used) + " laws, " + std::to_string(checks) + " checks" + (bad.empty() ? "" : "; " + bad)};
}

SuiteReport only(const Corpus& c, std::initializer_list<LawCheck> checks, std::size_t bound, unsigned faults = 0) {
  SuiteReport s{"selected", c.seed, bound, faults != 0, c.category_count(), {}};
  LawContext ctx{c, bound, faults};
  for (auto* f : checks) s.laws.push_back(f(ctx));
  return s;
}

// Builds every shipped construction over one corpus part and validates it.
template <Ambient S>
void sweep_part(const CorpusPart<S>& part, std::size_t& built, std::size_t& bad, std::string& first) {
  const auto& amb = part.amb;
  auto check = [&](const std::string& what, const Category<S>& x) {
    ++built;
    if (!validate_category(amb, x).passed()) {
      ++bad;
      if (first.empty()) first = part.tag + " " + what;
    }
  };
  for (const auto& [name, x] : part.categories) check(name, x);
  for (const auto& a : amb.objects_up_to(3)) {
    check("disc", disc(amb, a));
    check("codisc", codisc(amb, a));
    auto gens = part.J.generators(a);
    for (std::size_t i = 0; i < gens.size() && i < 2; ++i) check("cech", cech(amb, gens[gens.size() - 1 - i]));
  }
  for (const auto& [name, x] : part.categories) {
    if (x.obj.size() == 0) continue;
    auto gens = part.J.generators(x.obj);
    if (gens.empty() || detail::base_change_size(x, gens.back()) > 160) continue;
    check("base_change(" + name + ")", base_change(amb, x, gens.back()));
  }
  std::size_t pulled = 0;
  for (const auto& [name, f] : part.functors) {
    if (f.cod.obj.size() == 0 || f.cod.arr.size() > 10 || pulled >= 12) continue;
    auto gens = part.J.generators(f.cod.obj);
    if (gens.empty()) continue;
    ++pulled;
    auto sp = strict_pullback(amb, f, base_change_functor(amb, f.cod, gens.back()));
    check("strict_pullback(" + name + ")", sp.cat);
    ++built;
    if (!validate_functor(amb, sp.p1).passed() || !validate_functor(amb, sp.p2).passed()) {
      ++bad;
      if (first.empty()) first = part.tag + " strict_pullback projections of " + name;
    }
  }
}

Outcome construction_sweep(const Corpus& c) {
  std::size_t built = 0, bad = 0;
  std::string first;
  sweep_part(c.set, built, bad, first);
  sweep_part(c.grp, built, bad, first);
  sweep_part(c.gset, built, bad, first);
  const FinGrp grp;
  auto z2 = groups::cyclic(2), z3 = groups::cyclic(3), z4 = groups::cyclic(4);
  for (const auto& xm : {trivial_action_xmod(z4, z2, {0, 1, 0, 1}), trivial_action_xmod(z2, z4, {0, 2}),
                         trivial_action_xmod(z3, groups::trivial(), {0, 0, 0}), identity_xmod(z3),
                         identity_xmod(groups::symmetric(3))}) {
    ++built;
    if (!validate_category(grp, xmod_to_groupoid(xm)).passed()) {
      ++bad;
      if (first.empty()) first = "xmod_to_groupoid";
    }
  }
  std::string note = std::to_string(c.category_count()) + " corpus categories, " + std::to_string(built) +
                     " constructions, " + std::to_string(bad) + " invalid";
  if (!first.empty()) note += " (first: " + first + ")";
  return {bad == 0 && c.category_count() >= 50, note};
}

std::string run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str();
}

}  // namespace

int main() {
  const std::size_t bound = 4;
  const Corpus corpus = corpus_generate(1);

  criterion(1, "construction validity sweep", 10, [&] { return construction_sweep(corpus); });

  criterion(2, "base-change coherence", 5, [&] {
    auto r = law_base_change_coherence({corpus, bound});
    auto o = from(r);
    const auto triples = r.counters["triples"];
    const auto ids = r.counters["identity_base_changes"];
    o.ok = o.ok && triples >= 100 && ids >= 50;
    o.note = std::to_string(triples) + " triples, " + std::to_string(ids) + " identity base changes; " + o.note;
    return o;
  });

  criterion(3, "vertical composite by descent", 30, [&] {
    auto r = law_vcomp_descent({corpus, bound});
    auto o = from(r);
    const auto n = r.counters["descent_instances"];
    o.ok = o.ok && n >= 50;
    o.note = std::to_string(n) + " instances; " + o.note;
    return o;
  });

  criterion(4, "bicategory laws and fault detection", 60, [&] {
    auto clean = all_pass(run_suite(corpus, "bicategory", bound));
    if (!clean.ok) return clean;
    std::string caught;
    bool all_caught = true;
    for (auto [bit, name] : {std::pair{fault_pentagon, "pentagon"}, std::pair{fault_unit, "unit"},
                             std::pair{fault_naturality, "naturality"}, std::pair{fault_interchange, "interchange"}}) {
      auto n = run_suite(corpus, "bicategory", bound, bit).failures();
      all_caught = all_caught && n >= 1;
      caught += std::string(" ") + name + "=" + std::to_string(n);
    }
    return Outcome{all_caught, clean.note + "; failing laws under faults:" + caught};
  });

  criterion(5, "calculus of fractions", 60, [&] { return all_pass(run_suite(corpus, "fractions", bound)); });

  criterion(6, "localisation EF1-EF3", 60, [&] { return all_pass(only(corpus, {&law_ef1, &law_ef2, &law_ef3}, bound)); });

  criterion(7, "Bunge-Pare and weak equivalences", 30,
            [&] { return all_pass(only(corpus, {&law_bp_weq, &law_saturation}, bound)); });

  criterion(8, "pseudoinverse isotransformations", 30, [&] { return from(law_pseudoinverse({corpus, bound})); });

  criterion(9, "coproduct pretopology appendix", 30, [&] { return all_pass(run_suite(corpus, "appendix", bound)); });

  criterion(10, "report determinism", 300, [&] {
    const std::vector<std::string> args{"laws", "--suite", "all", "--seed", "1", "--format", "structured"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    const bool passed = a.rfind("0\n", 0) == 0;
    return Outcome{a == b && a.size() > 2,
                   std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different") +
                       (passed ? "" : ", suite reported failures")};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
