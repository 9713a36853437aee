#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "classext/error.hpp"
#include "classext/integer.hpp"

namespace classext {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(Errc::malformed_input, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVec>& rows) {
    return from_rows(rows, rows.empty() ? 0 : rows[0].size());
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const { return IntVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

  std::vector<IntVec> row_list() const {
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }

  /// rows (i, k) <- (a*ri + b*rk, c*ri + d*rk)
  void combine_rows(std::size_t i, std::size_t k, const Int& a, const Int& b, const Int& c, const Int& d) {
    for (std::size_t j = 0; j < cols_; ++j) {
      Int x = (*this)(i, j), y = (*this)(k, j);
      (*this)(i, j) = a * x + b * y;
      (*this)(k, j) = c * x + d * y;
    }
  }

  void combine_cols(std::size_t j, std::size_t k, const Int& a, const Int& b, const Int& c, const Int& d) {
    for (std::size_t i = 0; i < rows_; ++i) {
      Int x = (*this)(i, j), y = (*this)(i, k);
      (*this)(i, j) = a * x + b * y;
      (*this)(i, k) = c * x + d * y;
    }
  }

  /// row i += f * row k
  void add_row(std::size_t i, std::size_t k, const Int& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += f * (*this)(k, j);
  }

  void add_col(std::size_t j, std::size_t k, const Int& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += f * (*this)(i, k);
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
  }

  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", " : "") << "(";
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << ")";
    }
    os << "]";
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVec a_;
};

inline IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols() != y.rows()) throw Error(Errc::malformed_input, "matrix dimension mismatch");
  IntMatrix z(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

/// Row vector times matrix.
inline IntVec vec_mul(const IntVec& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw Error(Errc::malformed_input, "vector/matrix dimension mismatch");
  IntVec out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

inline IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Int determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(Errc::malformed_input, "determinant of non-square matrix");
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct HnfResult {
  IntMatrix H;
  IntMatrix U;
};

/// Row Hermite normal form with transform: H = U*M, pivots positive,
/// entries above each pivot in [0, pivot), zero rows at the bottom.
inline HnfResult hnf(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  IntMatrix H = M;
  IntMatrix U = IntMatrix::identity(m);
  std::size_t r = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (H(i, j) == 0) continue;
      if (H(r, j) == 0) {
        H.swap_rows(r, i);
        U.swap_rows(r, i);
        continue;
      }
      auto [g, s, t] = xgcd(H(r, j), H(i, j));
      Int a = H(r, j) / g, b = H(i, j) / g;
      H.combine_rows(r, i, s, t, -b, a);
      U.combine_rows(r, i, s, t, -b, a);
    }
    if (H(r, j) == 0) continue;
    if (H(r, j) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    pivots.emplace_back(r, j);
    ++r;
  }
  for (const auto& [pr, pc] : pivots) {
    for (std::size_t i = 0; i < pr; ++i) {
      Int q = floor_div(H(i, pc), H(pr, pc));
      if (q == 0) continue;
      H.add_row(i, pr, -q);
      U.add_row(i, pr, -q);
    }
  }
  return {H, U};
}

struct SnfResult {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
};

/// Smith normal form: S = U*M*V diagonal, d1 | d2 | ..., all d_i >= 0.
inline SnfResult snf(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  IntMatrix S = M;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);
  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    // Bring a nonzero entry to (t, t).
    bool found = false;
    for (std::size_t i = t; i < m && !found; ++i)
      for (std::size_t j = t; j < n && !found; ++j)
        if (S(i, j) != 0) {
          S.swap_rows(t, i);
          U.swap_rows(t, i);
          S.swap_cols(t, j);
          V.swap_cols(t, j);
          found = true;
        }
    if (!found) break;
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        if (S(i, t) % S(t, t) == 0) {
          Int q = S(i, t) / S(t, t);
          S.add_row(i, t, -q);
          U.add_row(i, t, -q);
          continue;
        }
        auto [g, s, u] = xgcd(S(t, t), S(i, t));
        Int a = S(t, t) / g, b = S(i, t) / g;
        S.combine_rows(t, i, s, u, -b, a);
        U.combine_rows(t, i, s, u, -b, a);
        changed = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        if (S(t, j) % S(t, t) == 0) {
          Int q = S(t, j) / S(t, t);
          S.add_col(j, t, -q);
          V.add_col(j, t, -q);
          continue;
        }
        auto [g, s, u] = xgcd(S(t, t), S(t, j));
        Int a = S(t, t) / g, b = S(t, j) / g;
        S.combine_cols(t, j, s, u, -b, a);
        V.combine_cols(t, j, s, u, -b, a);
        changed = true;
      }
      if (changed) continue;
      // Row and column t are clear; enforce divisibility on the rest.
      std::size_t bad_i = m;
      for (std::size_t i = t + 1; i < m && bad_i == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad_i = i;
            break;
          }
      if (bad_i == m) break;
      S.add_row(t, bad_i, 1);
      U.add_row(t, bad_i, 1);
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return {S, U, V};
}

/// Diagonal of a Smith form.
inline IntVec snf_diagonal(const IntMatrix& S) {
  IntVec d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

/// Inverse of a unimodular matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& V) {
  auto [H, U] = hnf(V);
  if (H != IntMatrix::identity(V.rows())) throw Error(Errc::malformed_input, "matrix is not unimodular");
  return U;
}

/// Reduce each entry v[j] into [0, d_j) where d_j > 0.
inline void reduce_mod(IntVec& v, const IntVec& moduli) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (moduli[j] > 0) v[j] = mod_floor(v[j], moduli[j]);
}

inline bool is_zero_vec(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

inline std::size_t leading_index(const IntVec& v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) return j;
  return v.size();
}

/// Hermite basis (nonzero rows only) of rowspan(gens) + sum_j moduli[j]*Z*e_j.
/// A modulus of zero leaves that coordinate free.
inline std::vector<IntVec> hnf_modular(const std::vector<IntVec>& gens, const IntVec& moduli) {
  const std::size_t n = moduli.size();
  std::vector<IntVec> pool;
  for (const auto& g : gens) {
    if (g.size() != n) throw Error(Errc::malformed_input, "generator length mismatch");
    IntVec v = g;
    reduce_mod(v, moduli);
    if (!is_zero_vec(v)) pool.push_back(std::move(v));
  }
  std::vector<IntVec> out;
  std::vector<std::size_t> piv;
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<IntVec> p;
    std::vector<IntVec> rest;
    for (auto& r : pool) {
      if (r[j] == 0) {
        rest.push_back(std::move(r));
        continue;
      }
      if (!p) {
        p = std::move(r);
        continue;
      }
      auto [g, s, t] = xgcd((*p)[j], r[j]);
      Int a = (*p)[j] / g, b = r[j] / g;
      IntVec np(n), nr(n);
      for (std::size_t k = j; k < n; ++k) {
        np[k] = s * (*p)[k] + t * r[k];
        nr[k] = a * r[k] - b * (*p)[k];
      }
      reduce_mod(np, moduli);
      reduce_mod(nr, moduli);
      p = std::move(np);
      if (!is_zero_vec(nr)) rest.push_back(std::move(nr));
    }
    const Int& d = moduli[j];
    if (d > 0) {
      if (!p) {
        p = IntVec(n);
        (*p)[j] = d;
      } else {
        auto [g, s, t] = xgcd((*p)[j], d);
        IntVec np(n), nr(n);
        Int q = d / g;
        for (std::size_t k = j; k < n; ++k) {
          np[k] = s * (*p)[k];
          nr[k] = q * (*p)[k];
        }
        np[j] = g;
        nr[j] = 0;
        reduce_mod(np, moduli);
        reduce_mod(nr, moduli);
        if (!is_zero_vec(nr)) rest.push_back(std::move(nr));
        p = std::move(np);
      }
    }
    pool = std::move(rest);
    if (p) {
      if ((*p)[j] < 0)
        for (auto& x : *p) x = -x;
      out.push_back(std::move(*p));
      piv.push_back(j);
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::size_t c = piv[k];
    for (std::size_t i = 0; i < k; ++i) {
      Int q = floor_div(out[i][c], out[k][c]);
      if (q == 0) continue;
      for (std::size_t x = c; x < n; ++x) out[i][x] -= q * out[k][x];
    }
  }
  return out;
}

/// Hermite basis of the row lattice of a list of vectors of length n.
inline std::vector<IntVec> hnf_rows(const std::vector<IntVec>& gens, std::size_t n) {
  return hnf_modular(gens, IntVec(n, 0));
}

/// Reduce v against a Hermite basis; returns the remainder (zero iff v lies in the lattice).
inline IntVec hnf_reduce(IntVec v, const std::vector<IntVec>& basis) {
  for (const auto& b : basis) {
    std::size_t c = leading_index(b);
    Int q = floor_div(v[c], b[c]);
    if (q == 0) continue;
    for (std::size_t k = c; k < v.size(); ++k) v[k] -= q * b[k];
  }
  return v;
}

inline bool hnf_contains(const std::vector<IntVec>& basis, const IntVec& v) {
  return is_zero_vec(hnf_reduce(v, basis));
}

/// Rows x of Z^k (taken modulo row_moduli) with x*P = 0 modulo col_moduli.
/// Returned as a Hermite basis that includes the row_moduli relations.
inline std::vector<IntVec> kernel_moduli(const IntMatrix& P, const IntVec& col_moduli, const IntVec& row_moduli) {
  const std::size_t k = P.rows(), n = P.cols();
  std::vector<IntVec> gens;
  for (std::size_t i = 0; i < k; ++i) {
    IntVec v(n + k);
    for (std::size_t j = 0; j < n; ++j) v[j] = P(i, j);
    v[n + i] = 1;
    gens.push_back(std::move(v));
  }
  IntVec mod = col_moduli;
  mod.insert(mod.end(), row_moduli.begin(), row_moduli.end());
  std::vector<IntVec> out;
  for (const auto& r : hnf_modular(gens, mod))
    if (leading_index(r) >= n) out.emplace_back(r.begin() + n, r.end());
  return out;
}

/// Lattice of x in Z^rows with x*M = 0 mod n (n = 0: over Z). For n > 0 the
/// trivial rows n*e_i are omitted from the returned generating set.
inline IntMatrix kernel_mod(const IntMatrix& M, const Int& n) {
  IntVec cm(M.cols(), n), rm(M.rows(), n);
  std::vector<IntVec> rows;
  for (auto& r : kernel_moduli(M, cm, rm)) {
    if (n > 0) {
      bool trivial = true;
      for (const auto& x : r)
        if (x % n != 0) trivial = false;
      if (trivial) continue;
    }
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows, M.rows());
}

/// Solve x*P = b modulo col_moduli with x taken modulo row_moduli. The answer
/// is normalized against the kernel so each kernel pivot coordinate lies in [0, pivot).
inline std::optional<IntVec> solve_moduli(const IntMatrix& P, const IntVec& b, const IntVec& col_moduli,
                                          const IntVec& row_moduli) {
  const std::size_t k = P.rows(), n = P.cols();
  if (b.size() != n) throw Error(Errc::malformed_input, "right-hand side length mismatch");
  std::vector<IntVec> gens;
  for (std::size_t i = 0; i < k; ++i) {
    IntVec v(n + k);
    for (std::size_t j = 0; j < n; ++j) v[j] = P(i, j);
    v[n + i] = 1;
    gens.push_back(std::move(v));
  }
  IntVec mod = col_moduli;
  mod.insert(mod.end(), row_moduli.begin(), row_moduli.end());
  auto H = hnf_modular(gens, mod);
  IntVec v(n + k);
  for (std::size_t j = 0; j < n; ++j) v[j] = b[j];
  std::vector<IntVec> ker;
  for (const auto& r : H) {
    std::size_t c = leading_index(r);
    if (c >= n) {
      ker.emplace_back(r.begin() + n, r.end());
      continue;
    }
    if (v[c] % r[c] != 0) return std::nullopt;
    Int q = v[c] / r[c];
    for (std::size_t x = c; x < n + k; ++x) v[x] -= q * r[x];
  }
  for (std::size_t j = 0; j < n; ++j)
    if (v[j] != 0) return std::nullopt;
  IntVec x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = -v[n + i];
  for (const auto& r : ker) {
    std::size_t c = leading_index(r);
    Int q = floor_div(x[c], r[c]);
    if (q == 0) continue;
    for (std::size_t t = c; t < k; ++t) x[t] -= q * r[t];
  }
  return x;
}

inline std::optional<IntVec> solve_mod(const IntMatrix& M, const IntVec& b, const Int& n) {
  return solve_moduli(M, b, IntVec(M.cols(), n), IntVec(M.rows(), n));
}

}  // namespace classext
