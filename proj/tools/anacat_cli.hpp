#pragma once

// Command dispatch for the anacat tool. Exit codes: 0 pass, 1 failure
// witness emitted, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anacat/anacat.hpp"

namespace anacat::cli {

enum Exit : int { exit_pass = 0, exit_fail = 1, exit_usage = 2 };

struct Options {
  std::string file;
  std::string functor;
  std::string pretopology = "surj";
  std::string first, second;
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::size_t bound = 0;
  bool fault_inject = false;
  std::string format = "text";
  std::string input;
  std::string output;
};

namespace detail {

inline int usage(std::ostream& err, const std::string& msg) {
  err << "error: " << msg << "\n";
  return exit_usage;
}

inline bool is_usage_kind(ErrorKind k) {
  return k == ErrorKind::parse || k == ErrorKind::usage || k == ErrorKind::domain_mismatch ||
         k == ErrorKind::precondition;
}

template <class T>
const T* pick(const std::map<std::string, T>& m, const std::string& name, const char* what, std::ostream& err) {
  if (name.empty()) {
    if (m.size() == 1) return &m.begin()->second;
    err << "error: the file declares " << m.size() << " " << what << "s; name one\n";
    return nullptr;
  }
  auto it = m.find(name);
  if (it == m.end()) {
    err << "error: no " << what << " named '" << name << "'\n";
    return nullptr;
  }
  return &it->second;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

inline int cmd_validate(const io::AnyInstance& any, std::ostream& out) {
  std::visit(
      [&](const auto& in) {
        out << "valid " << in.tag << " instance: " << in.declarations() << " declarations\n";
        auto list = [&](const char* what, const auto& m) {
          for (const auto& [name, _] : m) out << "  " << what << " " << name << "\n";
        };
        list("object", in.objects);
        list("map", in.maps);
        list("crossed-module", in.crossed_modules);
        for (const auto& [name, x] : in.categories)
          out << "  category " << name << " (" << x.obj.size() << " objects, " << x.arr.size() << " arrows)\n";
        list("functor", in.functors);
        list("transformation", in.transformations);
        list("anafunctor", in.anafunctors);
        list("ana-transformation", in.ana_transformations);
      },
      any);
  return exit_pass;
}

inline int cmd_is_ff(const io::AnyInstance& any, const Options& o, std::ostream& out, std::ostream& err) {
  return std::visit(
      [&](const auto& in) -> int {
        const auto* f = pick(in.functors, o.functor, "functor", err);
        if (!f) return exit_usage;
        auto d = fully_faithful_data(in.amb, *f);
        if (d.fully_faithful) {
          out << "true\n";
          return exit_pass;
        }
        std::vector<std::size_t> hits(d.square.size(), 0);
        for (Elem k : d.comparison.table) ++hits[k];
        for (Elem k = 0; k < hits.size(); ++k)
          if (hits[k] != 1) {
            auto [ab, y] = d.square.pairs[k];
            auto [a, b] = d.x2.pairs[ab];
            out << "false\n";
            emit(out, json{{"source", a}, {"target", b}, {"arrow", y}, {"preimages", hits[k]}});
            break;
          }
        return exit_fail;
      },
      any);
}

inline int cmd_is_weq(const io::AnyInstance& any, const Options& o, std::ostream& out, std::ostream& err) {
  return std::visit(
      [&](const auto& in) -> int {
        const auto* f = pick(in.functors, o.functor, "functor", err);
        if (!f) return exit_usage;
        auto j = io::pretopology_by_name(in.amb, o.pretopology, o.bound);
        auto r = is_J_equivalence(in.amb, *f, j);
        out << to_string(r.verdict) << "\n";
        if (r.witness) {
          json w{{"route", r.route}, {"splitting", io::splitting_json(in.amb, *r.witness)}};
          emit(out, w);
          return exit_pass;
        }
        emit(out, json{{"fully_faithful", is_fully_faithful(in.amb, *f)}, {"pretopology", j.name}});
        return exit_fail;
      },
      any);
}

inline int cmd_compose_ana(const io::AnyInstance& any, const Options& o, std::ostream& out, std::ostream& err) {
  return std::visit(
      [&](const auto& in) -> int {
        const auto* f = pick(in.anafunctors, o.first, "anafunctor", err);
        const auto* g = f ? pick(in.anafunctors, o.second, "anafunctor", err) : nullptr;
        if (!g) return exit_usage;
        auto gf = compose_ana(in.amb, *f, *g);
        auto r = validate_anafunctor(in.amb, gf, io::pretopology_by_name(in.amb, in.pretopology));
        emit(out, io::anafunctor_json(in.amb, gf));
        if (!r.passed()) {
          emit(err, r.to_json());
          return exit_fail;
        }
        return exit_pass;
      },
      any);
}

inline int cmd_vcomp(const io::AnyInstance& any, const Options& o, std::ostream& out, std::ostream& err) {
  return std::visit(
      [&](const auto& in) -> int {
        const auto* a = pick(in.ana_transformations, o.first, "ana-transformation", err);
        const auto* b = a ? pick(in.ana_transformations, o.second, "ana-transformation", err) : nullptr;
        if (!b) return exit_usage;
        if (!(a->tgt == b->src)) return usage(err, "vcomp: target of '" + o.first + "' is not the source of '" + o.second + "'");
        auto ba = vcomp_trans(in.amb, *a, *b);
        auto r = validate_ana_transformation(in.amb, ba);
        emit(out, io::ana_transformation_json(in.amb, ba));
        if (!r.passed()) {
          emit(err, r.to_json());
          return exit_fail;
        }
        return exit_pass;
      },
      any);
}

inline int cmd_pseudoinverse(const io::AnyInstance& any, const Options& o, std::ostream& out, std::ostream& err) {
  return std::visit(
      [&](const auto& in) -> int {
        const auto* w = pick(in.functors, o.functor, "functor", err);
        if (!w) return exit_usage;
        auto j = io::pretopology_by_name(in.amb, o.pretopology, o.bound);
        auto v = is_J_equivalence(in.amb, *w, j);
        if (!v) {
          out << "not a J-equivalence (" << to_string(v.verdict) << ")\n";
          return exit_fail;
        }
        auto p = pseudoinverse(in.amb, *w, j);
        bool iso = is_isotransformation(in.amb, p.iota) && is_isotransformation(in.amb, p.eps);
        emit(out, json{{"inverse", io::anafunctor_json(in.amb, p.inverse)},
                       {"iota", p.iota.comp.table},
                       {"eps", p.eps.comp.table},
                       {"isotransformations", iso}});
        return iso ? exit_pass : exit_fail;
      },
      any);
}

inline SuiteReport run_laws(const Options& o) {
  const std::size_t bound = o.bound > 0 ? o.bound : default_bound();
  auto corpus = corpus_generate(o.seed);
  return run_suite(corpus, o.suite, bound, o.fault_inject ? fault_all : fault_none);
}

inline int write_report(const SuiteReport& rep, const Options& o, std::ostream& out, std::ostream& err) {
  std::string text = o.format == "structured" ? rep.to_json().dump(2) + "\n" : rep.to_text();
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) return usage(err, "cannot write '" + o.output + "'");
    f << text;
  }
  return rep.passed() ? exit_pass : exit_fail;
}

inline int cmd_report(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.input.empty()) return write_report(run_laws(o), o, out, err);
  std::ifstream f(o.input);
  if (!f) return usage(err, "cannot open '" + o.input + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    return usage(err, std::string("report is not JSON: ") + e.what());
  }
  if (o.format == "structured") {
    out << j.dump(2) << "\n";
  } else {
    out << "suite " << j.value("suite", "?") << " seed=" << j.value("seed", 0) << " bound=" << j.value("bound", 0)
        << " categories=" << j.value("corpus_categories", 0) << (j.value("fault_inject", false) ? " fault-inject" : "")
        << "\n";
    for (const auto& l : j.value("laws", json::array())) {
      out << l.value("status", "?") << "  " << l.value("law", "?") << "  instances=" << l.value("instances", 0)
          << " bound=" << l.value("bound", 0);
      if (l.value("failures", 0) > 0) out << " failures=" << l.value("failures", 0);
      if (l.contains("detail")) out << "  (" << l.at("detail").get<std::string>() << ")";
      out << "\n";
    }
  }
  return j.value("status", "fail") == "pass" ? exit_pass : exit_fail;
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Internal categories and anafunctors over FinSet, FinGrp and FinGSet", "anacat"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> suites{"all"};
  for (auto s : suite_names) suites.emplace_back(s);

  auto* validate = app.add_subcommand("validate", "Load an instance file and run its validators");
  validate->add_option("file", o.file)->required();

  auto* is_ff = app.add_subcommand("is-ff", "Decide whether a functor is fully faithful");
  is_ff->add_option("file", o.file)->required();
  is_ff->add_option("--functor", o.functor, "Functor name (default: the only one)");

  auto* is_weq = app.add_subcommand("is-weq", "Decide whether a functor is a J-equivalence");
  is_weq->add_option("file", o.file)->required();
  is_weq->add_option("--functor", o.functor, "Functor name (default: the only one)");
  is_weq->add_option("--pretopology", o.pretopology, "triv, surj, split or all")->required();
  is_weq->add_option("--bound", o.bound, "Generator bound for the cover search");

  auto* compose = app.add_subcommand("compose-ana", "Compose two anafunctors: G after F");
  compose->add_option("file", o.file)->required();
  compose->add_option("F", o.first)->required();
  compose->add_option("G", o.second)->required();

  auto* vcomp = app.add_subcommand("vcomp", "Vertical composite of two ana-transformations: b after a");
  vcomp->add_option("file", o.file)->required();
  vcomp->add_option("a", o.first)->required();
  vcomp->add_option("b", o.second)->required();

  auto* pinv = app.add_subcommand("pseudoinverse", "Anafunctor pseudoinverse of a J-equivalence");
  pinv->add_option("file", o.file)->required();
  pinv->add_option("--functor", o.functor, "Functor name (default: the only one)");
  pinv->add_option("--pretopology", o.pretopology, "triv, surj, split or all")->required();
  pinv->add_option("--bound", o.bound, "Generator bound for the cover search");

  auto* laws = app.add_subcommand("laws", "Run a law suite over the generated corpus");
  laws->add_option("--suite", o.suite)->check(CLI::IsMember(suites));
  laws->add_option("--seed", o.seed);
  laws->add_option("--bound", o.bound, "Size bound (default from ANACAT_BOUND, else 4)")->check(CLI::Range(2, 6));
  laws->add_flag("--fault-inject", o.fault_inject, "Corrupt bicategory structure to test checker sensitivity");
  laws->add_option("--format", o.format)->check(CLI::IsMember({"text", "structured"}));
  laws->add_option("--out", o.output, "Write the report to a file");

  auto* report = app.add_subcommand("report", "Render a suite report");
  report->add_option("--format", o.format)->check(CLI::IsMember({"text", "structured"}))->required();
  report->add_option("--input", o.input, "A structured report to render instead of running");
  report->add_option("--suite", o.suite)->check(CLI::IsMember(suites));
  report->add_option("--seed", o.seed);
  report->add_option("--bound", o.bound)->check(CLI::Range(2, 6));
  report->add_option("--out", o.output, "Write the report to a file");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    return detail::usage(err, e.what());
  }

  try {
    if (*laws) return detail::write_report(detail::run_laws(o), o, out, err);
    if (*report) return detail::cmd_report(o, out, err);
    auto any = io::load_file(o.file);
    if (*validate) return detail::cmd_validate(any, out);
    if (*is_ff) return detail::cmd_is_ff(any, o, out, err);
    if (*is_weq) return detail::cmd_is_weq(any, o, out, err);
    if (*compose) return detail::cmd_compose_ana(any, o, out, err);
    if (*vcomp) return detail::cmd_vcomp(any, o, out, err);
    if (*pinv) return detail::cmd_pseudoinverse(any, o, out, err);
  } catch (const io::LoadError& e) {
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::validation) {
      detail::emit(out, json{{"location", e.location}, {"error", e.what()}, {"witness", e.witness}});
      return exit_fail;
    }
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return detail::is_usage_kind(e.kind()) ? exit_usage : exit_fail;
  }
  return exit_usage;
}

}  // namespace anacat::cli
