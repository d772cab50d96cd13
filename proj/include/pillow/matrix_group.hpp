#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pillow/error.hpp"
#include "pillow/group.hpp"
#include "pillow/perm.hpp"

namespace pillow {

/// Square matrix over F_p, row-major.
struct Matrix {
  std::size_t dim = 0;
  std::vector<int> entries;

  int at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
};

inline bool supported_prime(int p) { return p == 2 || p == 3 || p == 5 || p == 7; }

inline int det_mod(Matrix m, int p) {
  const std::size_t n = m.dim;
  auto at = [&](std::size_t r, std::size_t c) -> int& { return m.entries[r * n + c]; };
  long long det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && at(piv, col) % p == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(piv, c), at(col, c));
      det = (p - det) % p;
    }
    int a = at(col, col);
    det = det * a % p;
    int ainv = 1;
    while (a * ainv % p != 1) ++ainv;
    for (std::size_t r = col + 1; r < n; ++r) {
      int f = at(r, col) * ainv % p;
      for (std::size_t c = col; c < n; ++c) at(r, c) = ((at(r, c) - f * at(col, c)) % p + p) % p;
    }
  }
  return static_cast<int>(det);
}

/// Index of a nonzero vector v in F_p^dim: sum v_i p^(dim-1-i), minus one.
inline std::size_t vector_index(const std::vector<int>& v, int p) {
  std::size_t k = 0;
  for (int x : v) k = k * static_cast<std::size_t>(p) + static_cast<std::size_t>(x);
  return k - 1;
}

inline std::vector<int> index_vector(std::size_t k, std::size_t dim, int p) {
  std::vector<int> v(dim);
  ++k;
  for (std::size_t i = dim; i-- > 0;) {
    v[i] = static_cast<int>(k % static_cast<std::size_t>(p));
    k /= static_cast<std::size_t>(p);
  }
  return v;
}

/// The permutation of nonzero column vectors induced by v -> Mv.
inline Perm matrix_to_perm(const Matrix& m, int p) {
  if (!supported_prime(p)) fail(errc::unsupported_field, "prime must be one of 2, 3, 5, 7");
  if (m.entries.size() != m.dim * m.dim || m.dim == 0) fail(errc::invalid_input, "matrix is not square");
  Matrix r = m;
  for (int& x : r.entries) x = ((x % p) + p) % p;
  if (det_mod(r, p) == 0) fail(errc::singular_matrix, "matrix is singular mod " + std::to_string(p));
  std::size_t n = 1;
  for (std::size_t i = 0; i < r.dim; ++i) n *= static_cast<std::size_t>(p);
  --n;
  std::vector<point_t> img(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto v = index_vector(k, r.dim, p);
    std::vector<int> w(r.dim, 0);
    for (std::size_t i = 0; i < r.dim; ++i) {
      int s = 0;
      for (std::size_t j = 0; j < r.dim; ++j) s += r.at(i, j) * v[j];
      w[i] = s % p;
    }
    img[k] = static_cast<point_t>(vector_index(w, p));
  }
  return Perm::from_images(std::move(img));
}

inline FiniteGroup group_from_matrices(int p, std::size_t dim, const std::vector<Matrix>& gens,
                                       std::size_t cap = default_order_cap) {
  if (!supported_prime(p)) fail(errc::unsupported_field, "prime must be one of 2, 3, 5, 7");
  std::size_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) n *= static_cast<std::size_t>(p);
  std::vector<Perm> perms;
  for (const auto& m : gens) {
    if (m.dim != dim) fail(errc::degree_mismatch, "matrix dimension differs from dim");
    perms.push_back(matrix_to_perm(m, p));
  }
  return group_from_generators(n - 1, std::move(perms), cap);
}

}  // namespace pillow
