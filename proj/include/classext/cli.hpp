#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "classext/suite.hpp"

namespace classext::cli {

enum Exit { ok = 0, violation = 1, input_error = 2 };

struct Options {
  int verbosity = 1;
  std::optional<std::string> out;
  std::uint64_t seed = 20261016;
  std::optional<long long> max_enum;
};

inline json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::malformed_input, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_input, path + ": " + e.what());
  }
}

/// Documents are either a path or inline JSON starting with '{'.
inline json load(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') {
    try {
      return json::parse(arg);
    } catch (const json::exception& e) {
      throw Error(Errc::malformed_input, e.what());
    }
  }
  return read_document(arg);
}

inline Limits limits_of(const Options& o) {
  Limits lim = Limits::from_env();
  if (o.max_enum) {
    if (*o.max_enum <= 0) throw Error(Errc::malformed_input, "enumeration bound must be positive");
    lim.max_size = *o.max_enum;
  }
  return lim;
}

inline void emit(const Options& o, const json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (o.out) {
    std::ofstream f(*o.out);
    if (!f) throw Error(Errc::malformed_input, "cannot write " + *o.out);
    f << text;
  } else {
    out << text;
  }
}

// ---------------------------------------------------------------------------
// classgroup

inline json quad_kernel_json(const QuadKernelGroup& c, int verbosity) {
  json j = group_json(c.group.invariants(), c.group.order());
  j["ext"] = ext_to_json(ExtDesc{c.ext, nullptr});
  if (verbosity >= 1) {
    std::vector<json> forms, reps;
    for (const auto& f : c.forms) forms.push_back(to_json(f));
    for (const auto& r : c.reps) reps.push_back(to_json(r.L.lat));
    j["forms"] = sorted_array(forms);
    j["representatives"] = sorted_array(reps);
  }
  return j;
}

inline json alg_class_json(const AlgClassGroup& c, int verbosity) {
  json j = group_json(c.group.invariants(), c.group.order());
  j["ext"] = ext_to_json(ExtDesc{std::nullopt, c.ext});
  j["invertible"] = std::to_string(c.G.size());
  if (verbosity >= 1) {
    std::vector<json> reps;
    for (const auto& r : c.group.elements()) reps.push_back(to_json(r));
    j["representatives"] = sorted_array(reps);
  }
  return j;
}

inline QuadExt quad_leg(const json& doc, const std::string& leg) {
  auto ring = [&](const char* k) { return parse_ring(field(doc, k)); };
  if (leg.size() != 2 || leg[0] == leg[1]) throw Error(Errc::malformed_input, "leg must be AB, AC or BC");
  RingDesc lo = ring(std::string(1, leg[0]).c_str()), hi = ring(std::string(1, leg[1]).c_str());
  if (lo.kind != RingDesc::Kind::quad_order) throw Error(Errc::unsupported_extension, "lower ring of a quadratic leg must be an order");
  std::optional<QuadOrderDesc> ob;
  if (hi.kind == RingDesc::Kind::quad_order) ob = hi.order;
  else if (hi.kind != RingDesc::Kind::quad_field) throw Error(Errc::unsupported_extension, "mixed tower");
  return QuadExt::make(lo.order, ob);
}

/// A finite tower document: {"C": algebra, "A": subring, "B": subring}, subrings as {"gens":…} or {"lattice":…}.
inline std::vector<IntVec> subring_lattice(const Algebra& C, const json& j) {
  if (j.is_string() && j.get<std::string>() == "C") return whole_lattice(C);
  if (j.is_string() && j.get<std::string>() == "prime") return subring_generated(C, {});
  if (j.contains("gens")) return subring_generated(C, rows_of(j.at("gens")));
  if (j.contains("lattice")) return span_lattice(C, rows_of(j.at("lattice")));
  throw Error(Errc::malformed_input, "subring must be \"C\", \"prime\", or carry gens/lattice");
}

inline bool is_quad_doc(const json& doc) {
  const json& c = doc.contains("C") ? doc.at("C") : field(doc, "B");
  const std::string k = field(c, "kind").get<std::string>();
  return k == "quad_order" || k == "quad_field";
}

inline int cmd_classgroup(const Options& o, const std::optional<long long>& D, const std::optional<std::string>& ext, const std::string& leg,
                          std::ostream& out) {
  Limits lim = limits_of(o);
  if (D) {
    QuadClassGroup G = class_group_quad(*D);
    json j = group_json(G.group.invariants(), G.group.order());
    j["D"] = std::to_string(*D);
    if (o.verbosity >= 1) {
      std::vector<json> forms;
      for (const auto& f : G.forms) forms.push_back(to_json(f));
      j["forms"] = sorted_array(forms);
    }
    emit(o, j, out);
    return ok;
  }
  if (!ext) throw Error(Errc::malformed_input, "classgroup needs -D or --ext");
  json doc = load(*ext);
  const bool tower = doc.contains("C");
  if (is_quad_doc(doc)) {
    QuadExt e = tower ? quad_leg(doc, leg) : parse_extension(doc).quad.value();
    emit(o, quad_kernel_json(class_group_extension(e), o.verbosity), out);
    return ok;
  }
  ExtPtr e;
  if (tower) {
    AlgPtr C = parse_algebra(field(doc, "C"));
    auto A = subring_lattice(*C, field(doc, "A")), B = subring_lattice(*C, field(doc, "B"));
    if (leg == "AC") e = make_ext(C, A, std::nullopt, "A in C");
    else if (leg == "BC") e = make_ext(C, B, std::nullopt, "B in C");
    else if (leg == "AB") {
      ExtPtr eBC = make_ext(C, B, std::nullopt, "B in C");
      SubringAlgebra Bs = subring_as_algebra(eBC);
      std::vector<IntVec> AinB;
      for (const auto& a : A) AinB.push_back(Bs.to_A(*C, a));
      e = make_ext(Bs.alg, AinB, std::nullopt, "A in B");
    } else {
      throw Error(Errc::malformed_input, "leg must be AB, AC or BC");
    }
  } else {
    e = parse_extension(doc).alg;
  }
  emit(o, alg_class_json(class_group_extension(e, lim), o.verbosity), out);
  return ok;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string selector;
  std::optional<std::string> file;
  std::optional<long long> A, B;
  bool field_B = false;
  bool exhaustive = false;
  std::size_t count = 30;
  std::size_t covers = 4;
};

inline std::vector<Report> avoidance_sweep(const Options& o, const VerifyArgs& v, const Limits& lim) {
  std::vector<Report> rs;
  rs.push_back(avoidance_control());
  AlgPtr P = make_product(make_zmod(2), make_zmod(2));
  rs.push_back(verify_avoidance_ext(make_ext_generated(make_F4(), {}, std::nullopt, "F2 in F4"), lim, v.covers));
  rs.push_back(verify_avoidance_ext(make_ext_generated(P, {}, std::nullopt, "Z/2 diagonal in Z/2 x Z/2"), lim, v.covers));
  for (const auto& e : random_finite_extensions(o.seed, v.count, lim.max_size, lim)) rs.push_back(verify_avoidance_ext(e, lim, v.covers));
  return rs;
}

inline int cmd_verify(const Options& o, const VerifyArgs& v, std::ostream& out) {
  Limits lim = limits_of(o);
  std::vector<Report> reports;
  const std::string& s = v.selector;
  auto ext_doc = [&]() -> ExtDesc {
    if (!v.file) throw Error(Errc::malformed_input, "verify " + s + " needs --file");
    return parse_extension(load(*v.file));
  };
  auto alg_ext = [&]() -> ExtPtr {
    ExtDesc e = ext_doc();
    if (e.is_quad()) throw Error(Errc::unsupported_extension, "verify " + s + " needs an algebra extension");
    return e.alg;
  };
  if (s == "pic-seq") {
    if (v.A) {
      std::optional<QuadOrderDesc> ob;
      if (v.B && !v.field_B) ob = make_quad_order(*v.B);
      reports.push_back(verify_pic_sequence(QuadExt::make(make_quad_order(*v.A), ob)));
    } else {
      ExtDesc e = ext_doc();
      if (!e.is_quad()) throw Error(Errc::unsupported_extension, "pic-seq needs a quadratic extension");
      reports.push_back(verify_pic_sequence(*e.quad));
    }
  } else if (s == "tower") {
    if (!v.file) throw Error(Errc::malformed_input, "verify tower needs --file");
    json doc = load(*v.file);
    if (is_quad_doc(doc)) {
      QuadExt eAB = quad_leg(doc, "AB"), eBC = quad_leg(doc, "BC");
      if (eAB.K.D0 != eBC.K.D0 || eAB.fB != eBC.fA) throw Error(Errc::not_intermediate, "B is not the middle ring of the tower");
      reports.push_back(verify_tower_quad(eAB.fA, eAB.fB, eBC.fB, eAB.K));
    } else {
      AlgPtr C = parse_algebra(field(doc, "C"));
      reports.push_back(verify_tower_finite(C, subring_lattice(*C, field(doc, "A")), subring_lattice(*C, field(doc, "B")), lim));
    }
  } else if (s == "reduction") {
    reports.push_back(verify_reduction(alg_ext(), lim));
  } else if (s == "retraction") {
    reports.push_back(check_retraction_vanishing(alg_ext(), {}, lim));
  } else if (s == "semilocal") {
    if (v.file) {
      reports.push_back(verify_semilocal(alg_ext(), lim));
    } else {
      for (const auto& e : random_finite_extensions(o.seed, v.count, lim.max_size, lim)) reports.push_back(verify_semilocal(e, lim));
    }
  } else if (s == "avoidance") {
    if (v.exhaustive || !v.file) reports = avoidance_sweep(o, v, lim);
    else reports.push_back(verify_avoidance_ext(alg_ext(), lim, v.covers));
  } else if (s == "units-seq") {
    reports.push_back(verify_units_sequence(alg_ext(), lim));
  } else if (s == "tensor-square") {
    reports.push_back(verify_tensor_square(alg_ext(), lim));
  } else {
    throw Error(Errc::malformed_input, "unknown verifier \"" + s + "\"");
  }
  bool all = true;
  json j;
  if (reports.size() == 1) {
    j = reports[0].to_json(o.verbosity);
    all = reports[0].pass();
  } else {
    std::size_t passed = 0;
    json arr = json::array();
    for (const auto& r : reports) {
      passed += r.pass();
      arr.push_back(r.to_json(o.verbosity));
    }
    all = passed == reports.size();
    j = json{{"theorem", s}, {"status", all ? "pass" : "fail"}, {"reports", arr},
             {"summary", {{"instances", std::to_string(reports.size())}, {"passed", std::to_string(passed)}}}};
  }
  emit(o, j, out);
  return all ? ok : violation;
}

// ---------------------------------------------------------------------------
// principalize

inline int cmd_principalize(const Options& o, const std::string& file, std::ostream& out) {
  Limits lim = limits_of(o);
  SubmoduleDesc s = parse_submodule(load(file));
  json j{{"ext", ext_to_json(s.ext)}};
  if (s.quad) {
    j["ideal"] = to_json(s.quad->lat);
    auto inv = try_invertible(*s.quad);
    if (!inv) {
      j["verdict"] = "not invertible";
      emit(o, j, out);
      return violation;
    }
    if (s.ext.quad->b_is_field()) {
      FormPrincipality p = principality_by_forms(inv->L);
      j["reduced_form"] = to_json(p.reduced);
      if (p.generator) {
        j["verdict"] = "principal";
        j["generator"] = to_json(*p.generator);
      } else {
        j["verdict"] = "non-principal: reduced form " + p.reduced.str();
      }
    } else {
      QuadEnumeratedGroup E = class_group_enumerated(*s.ext.quad);
      QuadLattice c = unit_canonical(*s.ext.quad, inv->L.lat);
      bool principal = c == unit_canonical(*s.ext.quad, s.ext.quad->A());
      std::optional<QuadElt> gen;
      if (principal)
        for (const auto& u : order_units(s.ext.quad->K, s.ext.quad->fB))
          if (lat_scale(s.ext.quad->A(), u) == inv->L.lat) gen = u;
      j["verdict"] = principal ? "principal" : "non-principal";
      if (gen) j["generator"] = to_json(*gen);
      j["class_group"] = group_json(E.group.invariants(), E.group.order());
    }
    emit(o, j, out);
    return ok;
  }
  const AlgSubmodule& L = *s.alg;
  j["ideal"] = to_json(L.rows);
  auto inv = try_invertible(L);
  if (!inv) {
    j["verdict"] = "not invertible";
    emit(o, j, out);
    return violation;
  }
  const Algebra& B = *L.ext->B;
  if (B.finite() && B.size() <= lim.scan_size) {
    auto Ms = maximal_ideals_of_A(L.ext, lim);
    SemilocalResult r = principalize_semilocal(*inv, Ms, lim);
    j["verdict"] = "principal";
    j["y"] = to_json(r.y);
    j["generator"] = to_json(r.g);
    j["maximal_ideals"] = std::to_string(Ms.size());
    if (o.verbosity >= 2) {
      json xy = json::array();
      for (std::size_t k = 0; k < r.xy.size(); ++k)
        xy.push_back(json{{"x", to_json(r.xy[k].first)}, {"y", to_json(r.xy[k].second)}, {"a", to_json(r.a[k])}});
      j["certificate"] = xy;
    }
  } else {
    auto g = principal_generator(L);
    if (g) {
      j["verdict"] = "principal";
      j["generator"] = to_json(*g);
    } else {
      j["verdict"] = "no generator at height 20";
    }
  }
  emit(o, j, out);
  return ok;
}

// ---------------------------------------------------------------------------
// torsor

inline int cmd_torsor(const Options& o, const std::string& file, int N, long long height, std::ostream& out) {
  SubmoduleDesc s = parse_submodule(load(file));
  if (!s.quad) throw Error(Errc::unsupported_extension, "torsor algebras are built for quadratic ideals");
  if (!s.ext.quad->b_is_field()) throw Error(Errc::unsupported_extension, "torsor ideal must be a fractional ideal of the order");
  QuadOrderDesc A = make_quad_order(s.ext.quad->D_A());
  Report r = torsor_report(A, *s.quad, N, height);
  json j = r.to_json(o.verbosity);
  if (o.verbosity >= 2) j["algebra"] = torsor_to_json(build_torsor(A, *s.quad, N));
  emit(o, j, out);
  return r.pass() ? ok : violation;
}

// ---------------------------------------------------------------------------
// paper-examples

inline int cmd_suite(const Options& o, bool as_json, std::ostream& out) {
  Limits lim = limits_of(o);
  auto rows = run_suite(lim, o.seed, o.verbosity);
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& r : rows) {
    if (r.status == "pass") ++pass;
    else if (r.status == "fail") ++fail;
    else ++skipped;
  }
  if (as_json || o.out) {
    json arr = json::array();
    for (const auto& r : rows) {
      json x{{"theorem", r.theorem}, {"instance", r.instance}, {"status", r.status}};
      if (o.verbosity >= 1 || r.status == "fail") x["report"] = r.detail;
      arr.push_back(x);
    }
    json j{{"seed", std::to_string(o.seed)}, {"rows", arr},
           {"summary", {{"pass", std::to_string(pass)}, {"fail", std::to_string(fail)}, {"out_of_scope", std::to_string(skipped)}}}};
    emit(o, j, out);
  } else {
    std::size_t w0 = 7, w1 = 8;
    for (const auto& r : rows) {
      w0 = std::max(w0, r.theorem.size());
      w1 = std::max(w1, r.instance.size());
    }
    auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
    out << pad("theorem", w0) << "  " << pad("instance", w1) << "  status\n";
    for (const auto& r : rows) out << pad(r.theorem, w0) << "  " << pad(r.instance, w1) << "  " << r.status << "\n";
    out << pass << " pass, " << fail << " fail, " << skipped << " out of scope\n";
  }
  return fail == 0 ? ok : violation;
}

// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invertible ideals and class groups of ring extensions", "classext"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-v,--verbosity", o.verbosity, "0 = verdicts, 1 = witnesses, 2 = certificates")->check(CLI::Range(0, 2));
  app.add_option("--out", o.out, "write the JSON report to this path");
  app.add_option("--seed", o.seed, "seed for randomized sweeps");
  app.add_option("--max-enum,--max-size", o.max_enum, "enumeration bound on ambient ring size (default: $CLASSEXT_MAX_ENUM or 512)");

  auto* cg = app.add_subcommand("classgroup", "class group of an order or an extension");
  std::optional<long long> D;
  std::optional<std::string> ext_file;
  std::string leg = "AB";
  cg->add_option("-D", D, "discriminant of an imaginary quadratic order");
  cg->add_option("--ext", ext_file, "extension or tower document");
  cg->add_option("--leg", leg, "tower leg: AB, AC or BC");

  auto* vf = app.add_subcommand("verify", "run a verifier");
  VerifyArgs va;
  std::string b_arg;
  vf->add_option("selector", va.selector, "pic-seq, tower, reduction, retraction, semilocal, avoidance, units-seq, tensor-square")->required();
  vf->add_option("--file", va.file, "instance document");
  vf->add_option("--A", va.A, "discriminant of A (pic-seq)");
  vf->add_option("--B", b_arg, "discriminant of B, or K for the fraction field (pic-seq)");
  vf->add_flag("--exhaustive", va.exhaustive, "sweep a seeded corpus of finite extensions");
  vf->add_option("--count", va.count, "number of random extensions in a sweep");
  vf->add_option("--covers", va.covers, "largest cover size for avoidance");

  auto* pz = app.add_subcommand("principalize", "find a generator or prove non-principality");
  std::string pz_file;
  pz->add_option("--file", pz_file, "ideal document")->required();

  auto* ts = app.add_subcommand("torsor", "build the truncated torsor algebra of a quadratic ideal");
  std::string ts_file;
  int N = 3;
  long long height = 20;
  ts->add_option("--file", ts_file, "ideal document")->required();
  ts->add_option("-N", N, "truncation")->check(CLI::PositiveNumber);
  ts->add_option("--height", height, "coordinate bound for the unit search")->check(CLI::NonNegativeNumber);

  auto* pe = app.add_subcommand("paper-examples", "run the curated instance suite");
  bool as_json = false;
  pe->add_flag("--json", as_json, "print the JSON report instead of the table");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "classext: " << e.what() << "\n";
    return input_error;
  }
  try {
    if (!b_arg.empty()) {
      if (b_arg == "K" || b_arg == "field") va.field_B = true;
      else va.B = to_ll(parse_int(b_arg));
    }
    if (cg->parsed()) return cmd_classgroup(o, D, ext_file, leg, out);
    if (vf->parsed()) return cmd_verify(o, va, out);
    if (pz->parsed()) return cmd_principalize(o, pz_file, out);
    if (ts->parsed()) return cmd_torsor(o, ts_file, N, height, out);
    if (pe->parsed()) return cmd_suite(o, as_json, out);
  } catch (const Error& e) {
    err << "classext: " << e.what() << "\n";
    return e.code() == Errc::not_invertible ? violation : input_error;
  } catch (const json::exception& e) {
    err << "classext: malformed-input: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace classext::cli
