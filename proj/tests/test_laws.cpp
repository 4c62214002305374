#include <catch_amalgamated.hpp>

#include <set>

#include "anacat/anacat.hpp"

using namespace anacat;

namespace {

const Corpus& corpus() {
  static const Corpus c = corpus_generate(1);
  return c;
}

template <Ambient S>
void validate_part(const CorpusPart<S>& part) {
  for (const auto& c : part.categories) {
    INFO(part.tag << " category " << c.name);
    CHECK(validate_category(part.amb, c.value).passed());
  }
  for (const auto& f : part.functors) {
    INFO(part.tag << " functor " << f.name);
    CHECK(validate_functor(part.amb, f.value).passed());
  }
  for (const auto& f : part.anafunctors) {
    INFO(part.tag << " anafunctor " << f.name);
    CHECK(validate_anafunctor(part.amb, f.value, part.J).passed());
  }
}

template <Ambient S>
std::vector<std::string> names(const CorpusPart<S>& part) {
  std::vector<std::string> out;
  for (const auto& c : part.categories) out.push_back(c.name);
  return out;
}

}  // namespace

TEST_CASE("corpus generation is deterministic in the seed") {
  auto a = corpus_generate(7);
  auto b = corpus_generate(7);
  REQUIRE(a.category_count() == b.category_count());
  CHECK(names(a.set) == names(b.set));
  CHECK(names(a.grp) == names(b.grp));
  CHECK(names(a.gset) == names(b.gset));
  for (std::size_t i = 0; i < a.set.categories.size(); ++i)
    CHECK(a.set.categories[i].value == b.set.categories[i].value);
}

TEST_CASE("corpus respects its size bounds") {
  CorpusBounds small;
  small.random_per_ambient = 0;
  auto c = corpus_generate(1, small);
  CHECK(c.category_count() > 0);
  CHECK(c.category_count() < corpus().category_count());
  for (const auto& x : corpus().set.categories) {
    INFO(x.name);
    CHECK(x.value.arr.size() <= std::max<std::size_t>(corpus().bounds.max_arrows, 16));
  }
}

TEST_CASE("every corpus entry validates") {
  REQUIRE(corpus().category_count() >= 50);
  validate_part(corpus().set);
  validate_part(corpus().grp);
  validate_part(corpus().gset);
}

TEST_CASE("law registry covers every suite") {
  std::set<std::string_view> seen;
  std::set<std::string_view> ids;
  for (const auto& e : law_registry) {
    seen.insert(e.suite);
    CHECK(ids.insert(e.id).second);
    CHECK(e.id.substr(0, e.suite.size()) == e.suite);
  }
  CHECK(seen.size() == suite_names.size());
  CHECK(is_suite("all"));
  CHECK_FALSE(is_suite("everything"));
  CHECK_THROWS_AS(run_suite(corpus(), "everything", 3), Error);
}

TEST_CASE("each suite passes at bound 3") {
  for (auto suite : suite_names) {
    auto r = run_suite(corpus(), suite, 3);
    for (const auto& law : r.laws) {
      INFO(law.law << ": " << law.detail << " " << law.witness.dump());
      CHECK(law.passed());
      CHECK(law.instances > 0);
    }
  }
}

TEST_CASE("each bicategory fault is detected") {
  for (unsigned f : {fault_pentagon, fault_unit, fault_naturality, fault_interchange}) {
    auto r = run_suite(corpus(), "bicategory", 3, f);
    INFO("fault bit " << f);
    CHECK(r.failures() >= 1);
    CHECK(r.fault_inject);
  }
  CHECK(run_suite(corpus(), "bicategory", 3).failures() == 0);
}

TEST_CASE("fraction conditions on the point of a codiscrete pair") {
  const FinSet s;
  auto one = disc(s, FinSet::set(1));
  auto c2 = codisc(s, FinSet::set(2));
  Functor<FinSet> w{one, c2, set_map(1, 2, {0}), set_map(1, 4, {0})};
  auto j = surjections(s);
  REQUIRE(is_fully_faithful(s, w));
  auto split = is_J_equivalence(s, w, j);
  REQUIRE(split.verdict == Verdict::yes);
  REQUIRE(split.witness.has_value());
  VerificationReport r("splitting", 0);
  check_splitting(r, s, w, *split.witness, j, json::object());
  CHECK(r.passed());
  auto p = pseudoinverse(s, w, j);
  CHECK(is_isotransformation(s, p.iota));
  CHECK(is_isotransformation(s, p.eps));
}

TEST_CASE("structured reports are reproducible") {
  auto a = run_suite(corpus(), "appendix", 3).to_json().dump(2);
  auto b = run_suite(corpus_generate(1), "appendix", 3).to_json().dump(2);
  CHECK(a == b);
  auto c = run_suite(corpus_generate(2), "appendix", 3).to_json();
  CHECK(c["seed"] == 2);
}
