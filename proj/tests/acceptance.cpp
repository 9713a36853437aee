// Acceptance suite: one line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "classext/classext.hpp"

using namespace classext;

namespace {

constexpr std::uint64_t kSeed = 20261016;

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

bool run_criterion(int n, const std::string& title, double budget_s, const std::function<Outcome()>& fn) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool in_time = secs <= budget_s;
  bool ok = o.ok && in_time;
  std::ostringstream t;
  t << std::fixed << std::setprecision(2) << secs << "s";
  std::cout << "criterion " << std::setw(2) << n << ": " << (ok ? "PASS" : "FAIL") << "  " << title << "  [" << t.str() << " of " << budget_s
            << "s]  " << o.detail << (in_time ? "" : "  (over time budget)") << std::endl;
  return ok;
}

Outcome class_numbers() {
  const std::vector<std::tuple<int, std::size_t, IntVec>> want = {
      {-4, 1, {}}, {-20, 2, {2}}, {-23, 3, {3}}, {-36, 2, {2}}, {-47, 5, {5}}, {-163, 1, {}}};
  Outcome o;
  for (const auto& [D, h, fac] : want) {
    auto t0 = Clock::now();
    QuadClassGroup G = class_group_quad(D);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool good = G.group.order() == h && G.group.invariants() == fac && secs < 1.0;
    o.ok = o.ok && good;
    o.detail += "h(" + std::to_string(D) + ")=" + std::to_string(G.group.order()) + (good ? " " : "! ");
  }
  return o;
}

Outcome pic_sequence_sweep() {
  std::size_t exts = 0, violations = 0;
  for (int D = -3; D >= -500; --D) {
    if (!is_valid_discriminant(D)) continue;
    QuadOrderDesc A = make_quad_order(D);
    std::vector<std::optional<QuadOrderDesc>> tops{std::nullopt};
    for (Int g = 1; g < A.f; ++g)
      if (A.f % g == 0) tops.push_back(make_quad_order(g * g * A.D0));
    for (const auto& B : tops) {
      ++exts;
      Report r = verify_pic_sequence(QuadExt::make(A, B));
      violations += r.violations.size();
    }
  }
  return {violations == 0, std::to_string(exts) + " extensions, " + std::to_string(violations) + " violations"};
}

Outcome z3i_tower() {
  QuadField K = QuadField::of(make_quad_order(-4));
  Report r = verify_tower_quad(3, 1, 0, K);
  auto order = [&](const char* k) { return r.summary[k]["order"].get<std::string>(); };
  bool groups = order("c(A,B)") == "2" && order("c(A,C)") == "2" && order("c(B,C)") == "1";
  QuadExt eAC = QuadExt::make(make_quad_order(-36), std::nullopt);
  QuadInvertible L = require_invertible(submodule(eAC, {QuadElt(-1, 2), QuadElt(-1, -1, 3)}));
  QuadElt x(-1, 1, 1, 1);
  QuadInvertible L1 = recover_kernel_witness(L, x, 1);
  bool round = lat_scale(L1.L.lat, x) == L.L.lat && pic_class(L1.L) == pic_class(L.L) && pic_class(L.L) != principal_form(-36);
  return {r.pass() && groups && round, "groups " + order("c(A,B)") + "," + order("c(A,C)") + "," + order("c(B,C)") +
                                           "; L1 = " + L1.L.lat.str() + " with L1*(1+i) = L"};
}

Outcome semilocal_sweep(const Limits& lim) {
  auto exts = random_finite_extensions(kSeed, 100, 512, lim);
  std::size_t ideals = 0, validated = 0, nonprincipal = 0;
  for (const auto& e : exts) {
    auto Ms = maximal_ideals_of_A(e, lim);
    for (const auto& I : enumerate_invertible(enumerate_submodules(e, lim))) {
      ++ideals;
      if (!principal_generator(I.L)) ++nonprincipal;
      SemilocalResult r = principalize_semilocal(I, Ms, lim);
      if (submodule(e, {r.g}).rows == I.L.rows && is_unit(*e->B, r.g)) ++validated;
    }
  }
  bool ok = exts.size() >= 100 && nonprincipal == 0 && validated == ideals;
  return {ok, std::to_string(exts.size()) + " extensions, " + std::to_string(ideals) + " invertible ideals, " + std::to_string(validated) +
                  " generators validated, " + std::to_string(nonprincipal) + " non-principal"};
}

Outcome units_count(const Limits& lim) {
  std::vector<ExtPtr> exts{make_ext_generated(make_F4(), {}, std::nullopt, "F2 in F4"),
                           make_ext_generated(make_product(make_zmod(2), make_zmod(2)), {}, std::nullopt, "Z/2 diagonal")};
  for (const auto& e : random_finite_extensions(kSeed + 1, 24, 256, lim)) exts.push_back(e);
  std::size_t bad = 0;
  std::string named;
  for (std::size_t i = 0; i < exts.size(); ++i) {
    auto c = class_group_extension(exts[i], lim);
    std::size_t q = c.units_B.size() / c.units_A.size();
    bool eq = c.G.size() == q && c.units_B.size() % c.units_A.size() == 0 && verify_units_sequence(exts[i], lim).pass();
    bad += !eq;
    if (i < 2) named += exts[i]->name + ": |G|=" + std::to_string(c.G.size()) + " |B*/A*|=" + std::to_string(q) + "; ";
  }
  return {bad == 0 && exts.size() >= 22, named + std::to_string(exts.size()) + " extensions, " + std::to_string(bad) + " mismatches"};
}

Outcome avoidance(const Limits& lim) {
  std::vector<ExtPtr> exts{make_ext_generated(make_F4(), {}, std::nullopt, "F2 in F4"),
                           make_ext_generated(make_product(make_zmod(2), make_zmod(2)), {}, std::nullopt, "Z/2 diagonal"),
                           make_trivial_ext(make_zmod(6))};
  for (const auto& e : random_finite_extensions(kSeed + 2, 40, 256, lim)) exts.push_back(e);
  std::size_t violations = 0, ideals = 0;
  for (const auto& e : exts) {
    Report r = verify_avoidance_ext(e, lim, 4);
    violations += r.violations.size();
    ideals += std::stoul(r.summary["invertible"].get<std::string>());
  }
  Report c = avoidance_control();
  return {violations == 0 && c.pass(), std::to_string(exts.size()) + " extensions, " + std::to_string(ideals) + " invertible ideals, " +
                                           std::to_string(violations) + " violations; control " + (c.pass() ? "fails avoidance as expected" : "broken")};
}

Outcome torsor_sweep() {
  std::size_t reps = 0, mismatches = 0;
  for (int D = -3; D >= -100; --D) {
    if (!is_valid_discriminant(D)) continue;
    QuadOrderDesc A = make_quad_order(D);
    for (const auto& f : reduced_forms(D)) {
      ++reps;
      TorsorAlgebra T = build_torsor(A, form_to_ideal(f, A), 3);
      bool good = check_commutativity(T).ok() && check_vanishing(T).verified;
      bool principal = is_principal(T.L).has_value();
      good = good && graded_unit_search(T, 1, 50).unit.has_value() == principal;
      mismatches += !good;
    }
  }
  return {mismatches == 0, std::to_string(reps) + " representatives, " + std::to_string(mismatches) + " mismatches"};
}

Outcome reduction(const Limits& lim) {
  AlgPtr ZiM = make_idealization(make_quad_order_algebra(-4), 1, {{{3, 0}}});
  Report named = verify_reduction(make_idealization_ext(ZiM, {{1, 0}, {0, 3}}), lim);
  auto pairs = random_idealization_pairs(kSeed + 3, 20, 256, lim);
  std::size_t bad = 0;
  for (const auto& e : pairs) bad += !verify_reduction(e, lim).pass();
  return {named.pass() && bad == 0 && pairs.size() == 20,
          std::string("O_-36 (+) M ") + (named.pass() ? "pass" : "fail") + "; " + std::to_string(pairs.size()) + " random pairs, " +
              std::to_string(bad) + " failures"};
}

Outcome retraction(const Limits& lim) {
  std::vector<ExtPtr> exts;
  AlgPtr O20 = make_quad_order_algebra(-20);
  for (const auto& R : {make_zmod(4), make_zmod(6), make_F4(), O20}) {
    for (std::size_t k = 2; k <= 4; ++k) exts.push_back(make_base_ext(make_trunc_poly(R, k)));
    for (std::size_t m = 2; m <= 4; ++m) exts.push_back(make_base_ext(make_group_ring(R, m)));
  }
  exts.push_back(make_base_ext(make_idealization(make_zmod(4), 1, {{{2}}})));
  exts.push_back(make_base_ext(make_idealization(make_zmod(6), 2, {})));
  exts.push_back(make_base_ext(make_idealization(O20, 1, {{{2, 0}}})));
  exts.push_back(make_base_ext(make_idealization(O20, 1, {{{3, 0}}})));
  for (const auto& e : {make_ext_generated(make_F4(), {}, std::nullopt, "F2 in F4"), make_trivial_ext(make_zmod(12))})
    exts.push_back(tensor_square_ext(e, tensor_square(e, lim)));
  std::size_t violations = 0, certified = 0;
  for (const auto& e : exts) {
    Report r = check_retraction_vanishing(e, {}, lim);
    violations += r.violations.size();
    for (const auto& c : canonical_nonprincipal_candidates(e))
      if (!try_invertible(c) && mul(c, colon_into_A(c)).rows != e->A) ++certified;
  }
  return {violations == 0 && certified > 0, std::to_string(exts.size()) + " retraction extensions, " + std::to_string(violations) +
                                                " violations, " + std::to_string(certified) + " non-principal ideals of Z[sqrt-5] certified non-invertible"};
}

Outcome determinism(const Limits& lim) {
  auto dump = [&] {
    json arr = json::array();
    for (const auto& r : run_suite(lim, kSeed, 2)) arr.push_back(json{{"theorem", r.theorem}, {"instance", r.instance}, {"status", r.status}, {"detail", r.detail}});
    return arr.dump();
  };
  auto rows = run_suite(lim, kSeed, 0);
  std::size_t fail = 0;
  for (const auto& r : rows) fail += r.status == "fail";
  std::string a = dump(), b = dump();
  return {a == b && fail == 0, std::to_string(rows.size()) + " rows, " + std::to_string(fail) + " failing, reports " +
                                   (a == b ? "byte-identical" : "differ") + " (" + std::to_string(a.size()) + " bytes)"};
}

}  // namespace

int main() {
  Limits lim;
  auto t0 = Clock::now();
  bool all = true;
  all &= run_criterion(1, "class numbers of imaginary quadratic orders", 6, class_numbers);
  all &= run_criterion(2, "Pic exact sequence on conductor extensions, |D| <= 500", 60, pic_sequence_sweep);
  all &= run_criterion(3, "tower Z+3Z[i] in Z[i] in Q(i)", 1, z3i_tower);
  all &= run_criterion(4, "semi-local principalization, 100 random finite extensions", 120, [&] { return semilocal_sweep(lim); });
  all &= run_criterion(5, "|G(A,B)| = |B*/A*| on finite extensions", 120, [&] { return units_count(lim); });
  all &= run_criterion(6, "avoidance for invertible ideals, covers of size <= 4", 300, [&] { return avoidance(lim); });
  all &= run_criterion(7, "torsor algebras at |D| <= 100, N = 3", 120, torsor_sweep);
  all &= run_criterion(8, "reduction isomorphism on idealizations", 30, [&] { return reduction(lim); });
  all &= run_criterion(9, "class groups vanish for retraction extensions", 300, [&] { return retraction(lim); });
  all &= run_criterion(10, "deterministic suite report", 300, [&] { return determinism(lim); });
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::cout << (all ? "all criteria pass" : "some criteria fail") << " in " << std::fixed << std::setprecision(1) << secs << "s" << std::endl;
  return all ? 0 : 1;
}
