#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qinv {

/// Vertex images of a face gluing: perm[v] is where vertex v goes.
using Perm4 = std::array<int, 4>;

struct Gluing {
  int tet = 0;
  int face = 0;
  Perm4 perm{0, 1, 2, 3};
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// Face i of a tetrahedron is the one opposite vertex i; std::nullopt marks a
/// boundary face.
using TetGluings = std::array<std::optional<Gluing>, 4>;

/// Local edge order used everywhere: 01, 02, 03, 12, 13, 23.
inline constexpr std::array<std::array<int, 2>, 6> kLocalEdges{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// A tetrahedral complex given by face gluings, with vertex/edge/face classes
/// derived by union-find. Immutable once built.
///
/// Text format, one line per tetrahedron (blank lines and '#' comments
/// ignored):
///   tet <id>: <g0> <g1> <g2> <g3>
/// where g_i is "-" (boundary) or "<tet>:<face>:<perm>" and perm is a
/// 4-character word over 0123 listing the images of vertices 0..3.
class Triangulation {
 public:
  /// Validates gluings (permutations, face matching, involutivity) and derives
  /// the classes. Throws ErrorCode::kParse on inconsistent data.
  explicit Triangulation(std::vector<TetGluings> gluings);

  static Triangulation parse(std::string_view text);
  static Triangulation load(const std::string& path);
  std::string to_text() const;

  int num_tetrahedra() const noexcept { return static_cast<int>(gluings_.size()); }
  int num_vertices() const noexcept { return num_vertices_; }
  int num_edges() const noexcept { return num_edges_; }
  int num_faces() const noexcept { return num_faces_; }
  int num_boundary_faces() const noexcept { return num_boundary_faces_; }
  bool is_closed() const noexcept { return num_boundary_faces_ == 0; }
  /// |V| - |E| + |F| - |T|.
  int euler_characteristic() const noexcept;

  const std::vector<TetGluings>& gluings() const noexcept { return gluings_; }
  /// Edge class of each local edge (kLocalEdges order).
  const std::array<int, 6>& tet_edges(int tet) const { return tet_edges_.at(tet); }
  /// Face class of the face opposite each vertex.
  const std::array<int, 4>& tet_faces(int tet) const { return tet_faces_.at(tet); }
  const std::array<int, 4>& tet_vertices(int tet) const { return tet_vertices_.at(tet); }
  /// Three edge classes bounding each face class.
  const std::vector<std::array<int, 3>>& face_edges() const noexcept { return face_edges_; }

  /// Same complex with edge classes renumbered: new index = order[old index].
  Triangulation with_edge_labels(const std::vector<int>& order) const;

  /// Two disjoint copies side by side.
  static Triangulation disjoint_union(const Triangulation& a, const Triangulation& b);

  /// S³ as the double of one tetrahedron: two tetrahedra glued along all four
  /// faces by the identity.
  static Triangulation s3_double();

 private:
  void derive_classes();

  std::vector<TetGluings> gluings_;
  int num_vertices_ = 0;
  int num_edges_ = 0;
  int num_faces_ = 0;
  int num_boundary_faces_ = 0;
  std::vector<std::array<int, 6>> tet_edges_;
  std::vector<std::array<int, 4>> tet_faces_;
  std::vector<std::array<int, 4>> tet_vertices_;
  std::vector<std::array<int, 3>> face_edges_;
};

/// Local index (0..5) of the edge joining local vertices u != v.
int local_edge_index(int u, int v);

}  // namespace qinv
