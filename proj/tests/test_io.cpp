#include <catch_amalgamated.hpp>

#include "anacat/anacat.hpp"

using namespace anacat;

namespace {

json point_category() {
  return json::parse(R"({"obj": {"size": 1}, "arr": {"size": 1}, "s": {"table": [0]},
                         "t": {"table": [0]}, "e": {"table": [0]}, "m": {"pairs": [[0, 0, 0]]}})");
}

template <class S>
const io::Instance<S>& as(const io::AnyInstance& any) {
  return std::get<io::Instance<S>>(any);
}

std::string load_error(const json& file) {
  try {
    io::load(file);
  } catch (const io::LoadError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("finset categories survive a dump and reload") {
  auto corpus = corpus_generate(3);
  for (const auto& c : corpus.set.categories) {
    INFO(c.name);
    json file{{"ambient", "finset"}, {"categories", {{"x", io::category_json(corpus.set.amb, c.value)}}}};
    auto back = as<FinSet>(io::load(file)).categories.at("x");
    CHECK(back == c.value);
  }
}

TEST_CASE("fingrp and fingset categories survive a dump and reload") {
  auto corpus = corpus_generate(3);
  for (const auto& c : corpus.grp.categories) {
    INFO(c.name);
    json file{{"ambient", "fingrp"}, {"categories", {{"x", io::category_json(corpus.grp.amb, c.value)}}}};
    auto back = as<FinGrp>(io::load(file)).categories.at("x");
    CHECK(back.obj.size() == c.value.obj.size());
    CHECK(back.arr.size() == c.value.arr.size());
    CHECK(back.m.table == c.value.m.table);
  }
  for (const auto& c : corpus.gset.categories) {
    INFO(c.name);
    json file{{"ambient", "fingset:Z2"}, {"categories", {{"x", io::category_json(corpus.gset.amb, c.value)}}}};
    auto back = as<FinGSet>(io::load(file)).categories.at("x");
    CHECK(back == c.value);
  }
}

TEST_CASE("corpus anafunctors survive a dump and reload") {
  auto corpus = corpus_generate(3);
  for (const auto& f : corpus.set.anafunctors) {
    INFO(f.name);
    json file{{"ambient", "finset"}, {"anafunctors", {{"f", io::anafunctor_json(corpus.set.amb, f.value)}}}};
    CHECK(as<FinSet>(io::load(file)).anafunctors.at("f") == f.value);
  }
}

TEST_CASE("named references resolve and undeclared ones are reported") {
  json file{{"ambient", "finset"},
            {"objects", {{"P", {{"size", 1}}}}},
            {"categories", {{"one", {{"obj", "P"}, {"arr", "P"}, {"s", {{"table", {0}}}}, {"t", {{"table", {0}}}},
                                     {"e", {{"table", {0}}}}, {"m", {{"pairs", {{0, 0, 0}}}}}}}}}};
  CHECK(as<FinSet>(io::load(file)).categories.at("one").arr.size() == 1);
  file["categories"]["one"]["arr"] = "Q";
  auto msg = load_error(file);
  CHECK(msg.find("'Q'") != std::string::npos);
  CHECK(msg.find("/categories/one/arr") != std::string::npos);
}

TEST_CASE("composition tables must be complete and well typed") {
  auto x = point_category();
  x["m"]["pairs"] = json::array();
  CHECK_FALSE(load_error({{"ambient", "finset"}, {"categories", {{"x", x}}}}).empty());
  x["m"]["pairs"] = {{0, 0, 0}, {0, 0, 0}};
  CHECK_FALSE(load_error({{"ambient", "finset"}, {"categories", {{"x", x}}}}).empty());
  x["m"]["pairs"] = {{0, 0, 1}};
  CHECK_FALSE(load_error({{"ambient", "finset"}, {"categories", {{"x", x}}}}).empty());
}

TEST_CASE("malformed files are rejected with a location") {
  CHECK_THROWS_AS(io::load_text("{\"ambient\": "), io::LoadError);
  CHECK_FALSE(load_error({{"ambient", "sets"}}).empty());
  CHECK_FALSE(load_error({{"ambient", "finset"}, {"widgets", json::object()}}).empty());
  CHECK_FALSE(load_error({{"ambient", "fingset:Q8"}}).empty());
  CHECK_FALSE(load_error({{"ambient", "finset"}, {"objects", {{"A", {{"size", -1}}}}}}).empty());
}

TEST_CASE("builtin and declared groups") {
  json file{{"ambient", "fingrp"},
            {"groups", {{"K", {{"order", 2}, {"mul", {{0, 1}, {1, 0}}}}}}},
            {"objects", {{"A", {{"group", "K"}}}, {"B", {{"group", "S3"}}}}}};
  auto in = as<FinGrp>(io::load(file));
  CHECK(in.objects.at("A").size() == 2);
  CHECK(in.objects.at("B").size() == 6);
  file["groups"]["K"]["mul"] = {{0, 1}, {0, 1}};
  CHECK_FALSE(load_error(file).empty());
}

TEST_CASE("crossed modules load as groupoids") {
  json file{{"ambient", "fingrp"}, {"crossed_modules", {{"xm", {{"g", "Z4"}, {"h", "Z2"}, {"t", {0, 1, 0, 1}}}}}}};
  auto in = as<FinGrp>(io::load(file));
  const auto& x = in.categories.at("xm");
  CHECK(x.obj.size() == 2);
  CHECK(x.arr.size() == 8);
  file["crossed_modules"]["xm"]["t"] = {0, 1, 1, 1};
  CHECK_FALSE(load_error(file).empty());
}

TEST_CASE("pretopologies by name") {
  const FinSet s;
  CHECK(io::pretopology_by_name(s, "triv").name == "triv");
  CHECK(io::pretopology_by_name(s, "surj").contains(set_map(2, 1, {0, 0})));
  CHECK_FALSE(io::pretopology_by_name(s, "surj").contains(set_map(1, 2, {0})));
  CHECK_THROWS_AS(io::pretopology_by_name(s, "fpqc"), Error);
}

TEST_CASE("groupoid inverses are loaded and checked") {
  json x{{"obj", {{"size", 1}}}, {"arr", {{"size", 2}}}, {"s", {{"table", {0, 0}}}}, {"t", {{"table", {0, 0}}}},
         {"e", {{"table", {0}}}}, {"m", {{"pairs", {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}}}}, {"inv", {{"table", {0, 1}}}}};
  auto in = as<FinSet>(io::load({{"ambient", "finset"}, {"categories", {{"bz2", x}}}}));
  CHECK(in.categories.at("bz2").inv.has_value());
  x["inv"]["table"] = {1, 0};
  CHECK_FALSE(load_error({{"ambient", "finset"}, {"categories", {{"bz2", x}}}}).empty());
}
