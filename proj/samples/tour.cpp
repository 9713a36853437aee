// A short walk through the library: class groups, an extension kernel,
// a finite extension and a torsor algebra.
#include <iostream>

#include "classext/classext.hpp"

using namespace classext;

int main() {
  QuadClassGroup G = class_group_quad(-20);
  std::cout << "h(-20) = " << G.group.order() << ", forms:";
  for (const auto& f : G.forms) std::cout << " " << f.str();
  std::cout << "\n";

  QuadExt e = QuadExt::make(make_quad_order(-36), make_quad_order(-4));
  QuadKernelGroup K = class_group_extension(e);
  std::cout << "c(Z+3Z[i], Z[i]) has order " << K.group.order() << "\n";
  Report r = verify_pic_sequence(e);
  std::cout << "exact sequence check: " << (r.pass() ? "pass" : "fail") << "\n";

  Limits lim;
  ExtPtr f = make_ext_generated(make_F4(), {}, std::nullopt, "F2 in F4");
  AlgClassGroup C = class_group_extension(f, lim);
  std::cout << "F2 in F4: " << C.G.size() << " invertible ideals, class group of order " << C.group.order() << "\n";
  auto Ms = maximal_ideals_of_A(f, lim);
  for (const auto& I : C.G) {
    SemilocalResult s = principalize_semilocal(I, Ms, lim);
    std::cout << "  " << I.L.str() << " = A*" << to_json(s.g).dump() << "\n";
  }

  QuadOrderDesc A = make_quad_order(-20);
  QuadExt k = QuadExt::make(A, std::nullopt);
  TorsorAlgebra T = build_torsor(A, submodule(k, {QuadElt(-5, 2), QuadElt(-5, 1, 1)}), 3);
  VanishingCertificate V = check_vanishing(T);
  std::cout << "torsor algebra of (2, 1+sqrt-5): certificate " << (V.verified ? "verified" : "missing") << ", 1 =";
  for (const auto& [x, y] : V.pairs) std::cout << " + (" << x.str() << ")(" << y.str() << ")";
  std::cout << "\n";
  return r.pass() && V.verified ? 0 : 1;
}
