#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "classext/error.hpp"
#include "classext/integer.hpp"
#include "classext/intlat.hpp"

namespace classext {

/// A finite abelian group handed over as an explicit element list with a
/// product; computes invariant factors, cyclic generators and discrete logs.
template <class T>
class FiniteAbelianGroup {
 public:
  using Op = std::function<T(const T&, const T&)>;
  using Key = std::function<std::string(const T&)>;

  FiniteAbelianGroup(const std::vector<T>& elements, const T& identity, Op op, Key key)
      : op_(std::move(op)), key_(std::move(key)), identity_(identity) {
    for (const auto& x : elements) by_key_.emplace(key_(x), x);
    if (!by_key_.count(key_(identity_))) throw Error(Errc::invalid_structure, "identity is not among the group elements");
    build();
  }

  std::size_t order() const { return by_key_.size(); }
  const IntVec& invariants() const { return invariants_; }
  const std::vector<T>& generators() const { return generators_; }
  const T& identity() const { return identity_; }

  /// Elements sorted by key.
  std::vector<T> elements() const {
    std::vector<T> out;
    for (const auto& [k, v] : by_key_) out.push_back(v);
    return out;
  }

  bool contains(const T& x) const { return by_key_.count(key_(x)) > 0; }
  T mul(const T& x, const T& y) const { return op_(x, y); }
  std::string key(const T& x) const { return key_(x); }

  /// Coordinates of x in the cyclic decomposition.
  IntVec dlog(const T& x) const {
    auto it = dlog_.find(key_(x));
    if (it == dlog_.end()) throw Error(Errc::invalid_structure, "element is not in the group");
    return it->second;
  }

  T power(const T& x, Int e) const {
    Int n = static_cast<long long>(order());
    e = mod_floor(e, n);
    T acc = identity_, b = x;
    while (e > 0) {
      if (e % 2 == 1) acc = op_(acc, b);
      b = op_(b, b);
      e /= 2;
    }
    return acc;
  }

  Int element_order(const T& x) const {
    T y = x;
    Int k = 1;
    const std::string id = key_(identity_);
    while (key_(y) != id) {
      y = op_(y, x);
      ++k;
      if (k > static_cast<long long>(order())) throw Error(Errc::invalid_structure, "element order exceeds group order");
    }
    return k;
  }

 private:
  void build() {
    std::map<std::string, IntVec> sub;  // element key -> exponents on greedy generators
    std::map<std::string, T> sub_elt;
    std::vector<T> gens;
    std::vector<IntVec> rels;
    const std::string id = key_(identity_);
    sub.emplace(id, IntVec{});
    sub_elt.emplace(id, identity_);
    for (const auto& [k, g] : by_key_) {
      if (sub.count(k)) continue;
      const std::size_t i = gens.size();
      T p = g;
      Int m = 1;
      while (!sub.count(key_(p))) {
        p = op_(p, g);
        ++m;
        if (m > static_cast<long long>(order())) throw Error(Errc::invalid_structure, "group is not closed");
      }
      IntVec c = sub.at(key_(p));
      IntVec row(i + 1);
      for (std::size_t t = 0; t < c.size(); ++t) row[t] = -c[t];
      row[i] = m;
      for (auto& r : rels) r.push_back(0);
      rels.push_back(row);
      gens.push_back(g);
      std::map<std::string, IntVec> next;
      std::map<std::string, T> next_elt;
      for (const auto& [hk, hv] : sub) {
        T h = sub_elt.at(hk);
        for (Int j = 0; j < m; ++j) {
          IntVec e = hv;
          e.resize(i + 1);
          e[i] = j;
          const std::string kk = key_(h);
          if (!by_key_.count(kk)) throw Error(Errc::invalid_structure, "product leaves the element list");
          next.emplace(kk, e);
          next_elt.emplace(kk, h);
          h = op_(h, g);
        }
      }
      sub = std::move(next);
      sub_elt = std::move(next_elt);
    }
    if (sub.size() != order()) throw Error(Errc::invalid_structure, "generated subgroup does not exhaust the element list");
    const std::size_t k = gens.size();
    if (k == 0) return;
    IntMatrix R = IntMatrix::from_rows(rels, k);
    SnfResult S = snf(R);
    IntMatrix Vinv = unimodular_inverse(S.V);
    std::vector<std::size_t> keep;
    for (std::size_t t = 0; t < k; ++t)
      if (S.S(t, t) != 1) {
        keep.push_back(t);
        invariants_.push_back(S.S(t, t));
      }
    for (std::size_t t : keep) {
      T x = identity_;
      for (std::size_t i = 0; i < k; ++i) x = op_(x, power(gens[i], Vinv(t, i)));
      generators_.push_back(x);
    }
    for (const auto& [kk, e] : sub) {
      IntVec y = vec_mul(e, S.V), out;
      for (std::size_t c = 0; c < keep.size(); ++c) out.push_back(mod_floor(y[keep[c]], invariants_[c]));
      dlog_.emplace(kk, out);
    }
    for (std::size_t c = 0; c < keep.size(); ++c)
      if (element_order(generators_[c]) != invariants_[c]) throw Error(Errc::invalid_structure, "cyclic generator has the wrong order");
  }

  Op op_;
  Key key_;
  T identity_;
  std::map<std::string, T> by_key_;
  IntVec invariants_;
  std::vector<T> generators_;
  std::map<std::string, IntVec> dlog_;
};

}  // namespace classext
