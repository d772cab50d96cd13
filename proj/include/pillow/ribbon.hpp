#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "pillow/error.hpp"
#include "pillow/perm.hpp"

namespace pillow {

/// An edge traversed forward (+1) or backward (-1). Edge id 2c + j is the
/// lift of base loop x_{j+1} starting at sheet c.
struct Dart {
  std::uint32_t edge = 0;
  int dir = +1;

  friend bool operator==(const Dart&, const Dart&) = default;
};

struct Face {
  int type = 0;  // 0, 1: cycles of x1, x2 read forward; 2: cycles of (x1 x2)^-1
  std::vector<std::uint32_t> cosets;
  std::vector<Dart> boundary;
};

/**
 * Cell structure of a cover of the sphere pulled back from one vertex, two
 * loops x1, x2 and three faces with boundaries x1, x2, (x1 x2)^-1.
 *
 * Faces are ordered by type, then by least sheet. Each edge lies on its
 * type-j face forward and on one type-2 face backward.
 */
class RibbonGraph {
 public:
  RibbonGraph(Perm x1, Perm x2) : n_(x1.degree()) {
    if (x2.degree() != n_) fail(errc::degree_mismatch, "ribbon graph letters differ in degree");
    pi_[0] = std::move(x1);
    pi_[1] = std::move(x2);
    pi_[2] = (pi_[0] * pi_[1]).inverse();
    for (int j = 0; j < 3; ++j) face_at_[j].assign(n_, 0);
    inv0_ = pi_[0].inverse();
    inv1_ = pi_[1].inverse();
    for (int j = 0; j < 3; ++j) {
      for (const auto& cyc : pi_[j].cycles()) {
        Face f;
        f.type = j;
        f.cosets = cyc;
        if (j < 2) {
          for (point_t c : cyc) f.boundary.push_back({edge_id(c, j), +1});
        } else {
          point_t x = cyc.front();
          for (std::size_t k = 0; k < cyc.size(); ++k) {
            point_t y = inv0_(x);
            point_t z = inv1_(y);
            f.boundary.push_back({edge_id(y, 0), -1});
            f.boundary.push_back({edge_id(z, 1), -1});
            x = z;
          }
        }
        for (point_t c : cyc) face_at_[j][c] = static_cast<std::uint32_t>(faces_.size());
        faces_.push_back(std::move(f));
      }
    }
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return 2 * n_; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  const Perm& letter(int j) const { return pi_[j]; }

  long long euler_characteristic() const {
    return static_cast<long long>(n_) - static_cast<long long>(2 * n_) + static_cast<long long>(faces_.size());
  }

  static std::uint32_t edge_id(point_t c, int j) { return 2 * c + static_cast<std::uint32_t>(j); }

  point_t tail(std::uint32_t e) const { return e / 2; }
  point_t head(std::uint32_t e) const { return pi_[e % 2](e / 2); }
  point_t dart_tail(Dart d) const { return d.dir > 0 ? tail(d.edge) : head(d.edge); }
  point_t dart_head(Dart d) const { return d.dir > 0 ? head(d.edge) : tail(d.edge); }

  /// The face holding sheet c in its cycle of letter j (j = 2 for the third).
  std::uint32_t face_at(int j, point_t c) const { return face_at_[j][c]; }

  /// {face on which e runs forward, face on which e runs backward}.
  std::pair<std::uint32_t, std::uint32_t> faces_of_edge(std::uint32_t e) const {
    point_t c = e / 2;
    int j = static_cast<int>(e % 2);
    point_t x = j == 0 ? pi_[0](c) : pi_[0](pi_[1](c));
    return {face_at_[j][c], face_at_[2][x]};
  }

  void set_pole_faces(std::set<std::uint32_t> poles) {
    for (auto f : poles)
      if (f >= faces_.size()) fail(errc::index_out_of_range, "pole face id out of range");
    poles_ = std::move(poles);
  }
  const std::set<std::uint32_t>& pole_faces() const noexcept { return poles_; }

  /// Dart path from sheet `from` following a word of (letter, +-1) steps.
  std::vector<Dart> word_path(point_t from, const std::vector<std::pair<std::uint32_t, int>>& word) const {
    std::vector<Dart> path;
    point_t x = from;
    for (auto [j, s] : word) {
      if (j > 1) fail(errc::index_out_of_range, "ribbon graph has two letters");
      if (s > 0) {
        path.push_back({edge_id(x, static_cast<int>(j)), +1});
        x = pi_[j](x);
      } else {
        point_t y = (j == 0 ? inv0_ : inv1_)(x);
        path.push_back({edge_id(y, static_cast<int>(j)), -1});
        x = y;
      }
    }
    return path;
  }

  bool is_closed(const std::vector<Dart>& loop) const {
    if (loop.empty()) return true;
    for (std::size_t k = 0; k + 1 < loop.size(); ++k)
      if (dart_head(loop[k]) != dart_tail(loop[k + 1])) return false;
    return dart_head(loop.back()) == dart_tail(loop.front());
  }

 private:
  std::size_t n_;
  Perm pi_[3];
  Perm inv0_, inv1_;
  std::vector<Face> faces_;
  std::vector<std::uint32_t> face_at_[3];
  std::set<std::uint32_t> poles_;
};

/**
 * Solves d(a) = loop over F_2 on the faces and returns the parity of a on
 * the pole faces. On a sphere the solution is unique up to adding every face,
 * which changes nothing when the number of poles is even.
 */
inline int face_solve(const RibbonGraph& rg, const std::vector<Dart>& loop) {
  if (!rg.is_closed(loop)) fail(errc::open_path, "loop is not closed");
  if (rg.pole_faces().size() % 2 != 0) fail(errc::invariant_breach, "odd number of pole faces");
  const std::size_t nf = rg.faces().size();
  std::vector<std::uint8_t> parity(rg.edge_count(), 0);
  for (const auto& d : loop) parity[d.edge] ^= 1;

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(nf);
  for (std::uint32_t e = 0; e < rg.edge_count(); ++e) {
    auto [f, g] = rg.faces_of_edge(e);
    adj[f].push_back({g, e});
    adj[g].push_back({f, e});
  }
  std::vector<int> a(nf, -1);
  std::deque<std::uint32_t> q;
  if (nf) {
    a[0] = 0;
    q.push_back(0);
  }
  while (!q.empty()) {
    auto f = q.front();
    q.pop_front();
    for (auto [g, e] : adj[f]) {
      if (a[g] >= 0) continue;
      a[g] = a[f] ^ parity[e];
      q.push_back(g);
    }
  }
  for (std::uint32_t e = 0; e < rg.edge_count(); ++e) {
    auto [f, g] = rg.faces_of_edge(e);
    if (a[f] < 0 || a[g] < 0) fail(errc::disconnected, "dual graph is disconnected");
    if ((a[f] ^ a[g]) != parity[e]) fail(errc::no_solution, "loop is not a boundary; surface is not a sphere");
  }
  int s = 0;
  for (auto f : rg.pole_faces()) s ^= a[f];
  return s;
}

}  // namespace pillow
