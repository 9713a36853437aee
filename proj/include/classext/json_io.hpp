#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "classext/alg_ext.hpp"
#include "classext/algebra.hpp"
#include "classext/error.hpp"
#include "classext/forms.hpp"
#include "classext/quad_ideal.hpp"
#include "classext/shapes.hpp"

namespace classext {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Output: integers are decimal strings.

inline json to_json(const Int& n) { return to_dec(n); }

inline json to_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_dec(x));
  return a;
}

inline json to_json(const std::vector<IntVec>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

inline json to_json(const BQF& f) { return json::array({to_dec(f.a), to_dec(f.b), to_dec(f.c)}); }

inline json to_json(const QuadElt& x) { return x.str(); }

inline json to_json(const QuadLattice& L) { return json{{"den", to_dec(L.den)}, {"hnf", to_json(L.rows)}}; }

inline json to_json(const Rat& r) { return rat_str(r); }

/// Deterministic array: elements sorted by their canonical serialization.
inline json sorted_array(std::vector<json> items) {
  std::sort(items.begin(), items.end(), [](const json& a, const json& b) { return a.dump() < b.dump(); });
  json a = json::array();
  for (auto& x : items) a.push_back(std::move(x));
  return a;
}

// ---------------------------------------------------------------------------
// Input

inline Int int_of(const json& j) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  throw Error(Errc::malformed_input, "expected an integer, got " + j.dump());
}

inline std::size_t size_of(const json& j) {
  Int v = int_of(j);
  if (v < 0 || v > 1000000) throw Error(Errc::malformed_input, "size out of range: " + j.dump());
  return static_cast<std::size_t>(to_ll(v));
}

inline IntVec vec_of(const json& j) {
  if (!j.is_array()) throw Error(Errc::malformed_input, "expected an array, got " + j.dump());
  IntVec v;
  for (const auto& x : j) v.push_back(int_of(x));
  return v;
}

inline std::vector<IntVec> rows_of(const json& j) {
  if (!j.is_array()) throw Error(Errc::malformed_input, "expected an array of rows, got " + j.dump());
  std::vector<IntVec> out;
  for (const auto& r : j) out.push_back(vec_of(r));
  return out;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::malformed_input, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

/// A ring descriptor: an imaginary quadratic order, its fraction field, or an algebra.
struct RingDesc {
  enum class Kind { quad_order, quad_field, algebra } kind = Kind::algebra;
  QuadOrderDesc order{};  // for quad_order and quad_field (the maximal order)
  AlgPtr alg;
};

inline AlgPtr parse_algebra(const json& j);

inline RingDesc parse_ring(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  RingDesc r;
  if (kind == "quad_order") {
    r.kind = RingDesc::Kind::quad_order;
    r.order = make_quad_order(int_of(field(j, "D")));
    return r;
  }
  if (kind == "quad_field") {
    r.kind = RingDesc::Kind::quad_field;
    QuadOrderDesc o = make_quad_order(int_of(field(j, "D")));
    r.order = make_quad_order(o.D0);
    return r;
  }
  r.alg = parse_algebra(j);
  return r;
}

inline AlgPtr parse_algebra(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "zmod") return make_zmod(int_of(field(j, "n")));
  if (kind == "finite") {
    const std::size_t r = size_of(field(j, "rank"));
    IntVec ord = j.contains("orders") ? vec_of(j.at("orders")) : IntVec(r, int_of(field(j, "n")));
    const json& mul = field(j, "mul");
    if (ord.size() != r || !mul.is_array() || mul.size() != r) throw Error(Errc::malformed_input, "structure data does not match the rank");
    std::vector<std::vector<IntVec>> table;
    for (const auto& row : mul) {
      auto t = rows_of(row);
      if (t.size() != r) throw Error(Errc::malformed_input, "structure data does not match the rank");
      table.push_back(t);
    }
    IntVec one = vec_of(field(j, "one"));
    if (one.size() != r) throw Error(Errc::malformed_input, "unity has the wrong length");
    return make_finite(ord, table, one, j.value("name", std::string("finite")));
  }
  if (kind == "quad_order") return make_quad_order_algebra(int_of(field(j, "D")));
  if (kind == "product") {
    const json& fs = field(j, "factors");
    if (!fs.is_array() || fs.empty()) throw Error(Errc::malformed_input, "product needs factors");
    AlgPtr acc = parse_algebra(fs[0]);
    for (std::size_t i = 1; i < fs.size(); ++i) acc = make_product(acc, parse_algebra(fs[i]));
    return acc;
  }
  if (kind == "idealization") {
    AlgPtr R = parse_algebra(field(j, "base"));
    const json& m = field(j, "module");
    const std::size_t g = size_of(field(m, "gens"));
    std::vector<std::vector<IntVec>> rels;
    if (m.contains("rels"))
      for (const auto& rel : m.at("rels")) {
        if (!rel.is_array()) throw Error(Errc::malformed_input, "relation must be an array");
        std::vector<IntVec> rr;
        for (const auto& x : rel) rr.push_back(x.is_array() ? vec_of(x) : IntVec{int_of(x)});
        rels.push_back(rr);
      }
    return make_idealization(R, g, rels);
  }
  if (kind == "trunc_poly") return make_trunc_poly(parse_algebra(field(j, "base")), size_of(field(j, "k")));
  if (kind == "group_ring") return make_group_ring(parse_algebra(field(j, "base")), size_of(field(j, "order")));
  if (kind == "poly_quotient") return make_poly_quotient(parse_algebra(field(j, "base")), vec_of(field(j, "coeffs")));
  if (kind == "field") {
    Int q = int_of(field(j, "q"));
    if (q == 2 || q == 3 || q == 5 || q == 7) return make_zmod(q);
    if (q == 4) return make_F4();
    if (q == 8) return make_F8();
    if (q == 9) return make_F9();
    throw Error(Errc::malformed_input, "finite field of order " + to_dec(q) + " is not built in");
  }
  throw Error(Errc::malformed_input, "unknown ring kind \"" + kind + "\"");
}

/// An extension in either family.
struct ExtDesc {
  std::optional<QuadExt> quad;
  ExtPtr alg;
  bool is_quad() const { return quad.has_value(); }
};

inline ExtDesc parse_extension(const json& j) {
  ExtDesc e;
  const json& jb = field(j, "B");
  RingDesc B = parse_ring(jb);
  if (B.kind != RingDesc::Kind::algebra) {
    RingDesc A = parse_ring(field(j, "A"));
    if (A.kind != RingDesc::Kind::quad_order) throw Error(Errc::unsupported_extension, "subring of a quadratic ring must be a quadratic order");
    std::optional<QuadOrderDesc> ob;
    if (B.kind == RingDesc::Kind::quad_order) ob = B.order;
    e.quad = QuadExt::make(A.order, ob);
    return e;
  }
  std::optional<IntMatrix> retraction;
  if (j.contains("retraction")) {
    auto rows = rows_of(j.at("retraction"));
    retraction = IntMatrix::from_rows(rows, B.alg->rank());
  }
  const json& ja = field(j, "A");
  if (ja.is_string()) {
    const std::string s = ja.get<std::string>();
    if (s == "B") e.alg = make_trivial_ext(B.alg);
    else if (s == "base") e.alg = make_base_ext(B.alg);
    else if (s == "prime") e.alg = make_ext_generated(B.alg, {}, retraction);
    else throw Error(Errc::malformed_input, "unknown subring \"" + s + "\"");
  } else if (ja.contains("gens")) {
    e.alg = make_ext_generated(B.alg, rows_of(ja.at("gens")), retraction);
  } else if (ja.contains("lattice")) {
    e.alg = make_ext(B.alg, rows_of(ja.at("lattice")), retraction);
  } else if (ja.contains("base_gens")) {
    std::vector<IntVec> g;
    for (const auto& x : rows_of(ja.at("base_gens"))) g.push_back(x);
    const Algebra& R = *B.alg->base;
    e.alg = make_idealization_ext(B.alg, subring_generated(R, g));
  } else {
    throw Error(Errc::malformed_input, "subring must be \"B\", \"base\", \"prime\", or carry gens/lattice/base_gens");
  }
  return e;
}

inline json ext_to_json(const ExtDesc& e) {
  if (e.is_quad()) {
    json j{{"A", {{"kind", "quad_order"}, {"D", to_dec(e.quad->D_A())}}}};
    if (e.quad->b_is_field()) j["B"] = {{"kind", "quad_field"}, {"D", to_dec(e.quad->K.D0)}};
    else j["B"] = {{"kind", "quad_order"}, {"D", to_dec(e.quad->D_B())}};
    return j;
  }
  return json{{"B", e.alg->B->name}, {"A", to_json(e.alg->A)}};
}

inline QuadElt quad_elt_of(const QuadField& K, const json& j) {
  if (j.is_string()) return QuadElt::integer(K.d, parse_int(j.get<std::string>()));
  IntVec v = vec_of(j);
  if (v.size() == 1) return QuadElt::integer(K.d, v[0]);
  if (v.size() == 2) return QuadElt(K.d, v[0], v[1], 1);
  if (v.size() == 3) return QuadElt(K.d, v[0], v[1], v[2]);
  throw Error(Errc::malformed_input, "quadratic element must be [u, v] or [u, v, w]");
}

/// A submodule document: {"ext":…, "den":q, "hnf":[[a,b],[0,d]]}, {"ext":…, "gens":[…]} or {"ext":…, "rows":[…]}.
struct SubmoduleDesc {
  ExtDesc ext;
  std::optional<QuadSubmodule> quad;
  std::optional<AlgSubmodule> alg;
};

inline SubmoduleDesc parse_submodule(const json& j) {
  SubmoduleDesc s;
  s.ext = parse_extension(field(j, "ext"));
  if (s.ext.is_quad()) {
    const QuadExt& e = *s.ext.quad;
    if (j.contains("hnf")) {
      Int den = j.contains("den") ? int_of(j.at("den")) : Int(1);
      if (den <= 0) throw Error(Errc::malformed_input, "denominator must be positive");
      QuadLattice L = QuadLattice::from_hnf(e.K, den, rows_of(j.at("hnf")));
      s.quad = submodule_from_lattice(e, L);
    } else {
      std::vector<QuadElt> g;
      for (const auto& x : field(j, "gens")) g.push_back(quad_elt_of(e.K, x));
      s.quad = submodule(e, g);
    }
    return s;
  }
  if (j.contains("rows")) s.alg = submodule_from_lattice(s.ext.alg, rows_of(j.at("rows")));
  else s.alg = submodule(s.ext.alg, rows_of(field(j, "gens")));
  return s;
}

}  // namespace classext
