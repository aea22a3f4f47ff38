#include "qinv/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "qinv/error.hpp"

namespace qinv {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Class ids numbered by first appearance.
std::vector<int> label_classes(UnionFind& uf, std::size_t n, int& count) {
  std::vector<int> label(n, -1);
  std::map<std::size_t, int> ids;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = ids.try_emplace(uf.find(i), static_cast<int>(ids.size()));
    label[i] = it->second;
  }
  count = static_cast<int>(ids.size());
  return label;
}

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::kParse, msg); }

Perm4 parse_perm(std::string_view word) {
  if (word.size() != 4) parse_error("permutation word must have 4 characters: " + std::string(word));
  Perm4 p{};
  std::array<bool, 4> seen{};
  for (int i = 0; i < 4; ++i) {
    const int v = word[i] - '0';
    if (v < 0 || v > 3 || seen[v]) parse_error("not a permutation of 0123: " + std::string(word));
    seen[v] = true;
    p[i] = v;
  }
  return p;
}

int parse_int(std::string_view s, const std::string& what) {
  if (s.empty()) parse_error("missing " + what);
  int value = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') parse_error("bad " + what + ": " + std::string(s));
    value = value * 10 + (ch - '0');
    if (value > 100000000) parse_error(what + " out of range");
  }
  return value;
}

}  // namespace

int local_edge_index(int u, int v) {
  if (u > v) std::swap(u, v);
  for (int e = 0; e < 6; ++e) {
    if (kLocalEdges[e][0] == u && kLocalEdges[e][1] == v) return e;
  }
  throw Error(ErrorCode::kDomain, "not a tetrahedron edge");
}

Triangulation::Triangulation(std::vector<TetGluings> gluings) : gluings_(std::move(gluings)) {
  const int tets = num_tetrahedra();
  for (int t = 0; t < tets; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = gluings_[t][f];
      if (!g) continue;
      const std::string where = "tet " + std::to_string(t) + " face " + std::to_string(f);
      if (g->tet < 0 || g->tet >= tets || g->face < 0 || g->face > 3) {
        parse_error(where + ": gluing target out of range");
      }
      if (g->tet == t && g->face == f) parse_error(where + ": face glued to itself");
      if (g->perm[f] != g->face) parse_error(where + ": permutation does not map face onto face");
      const auto& back = gluings_[g->tet][g->face];
      if (!back || back->tet != t || back->face != f) parse_error(where + ": gluing is not involutive");
      for (int v = 0; v < 4; ++v) {
        if (back->perm[g->perm[v]] != v) parse_error(where + ": reverse permutation is not the inverse");
      }
    }
  }
  derive_classes();
}

void Triangulation::derive_classes() {
  const int tets = num_tetrahedra();
  UnionFind vertices(4 * tets), edges(6 * tets), faces(4 * tets);
  num_boundary_faces_ = 0;
  for (int t = 0; t < tets; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = gluings_[t][f];
      if (!g) {
        ++num_boundary_faces_;
        continue;
      }
      faces.unite(4 * t + f, 4 * g->tet + g->face);
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        vertices.unite(4 * t + v, 4 * g->tet + g->perm[v]);
        for (int w = v + 1; w < 4; ++w) {
          if (w == f) continue;
          edges.unite(6 * t + local_edge_index(v, w),
                      6 * g->tet + local_edge_index(g->perm[v], g->perm[w]));
        }
      }
    }
  }
  const auto vlabel = label_classes(vertices, 4 * tets, num_vertices_);
  const auto elabel = label_classes(edges, 6 * tets, num_edges_);
  const auto flabel = label_classes(faces, 4 * tets, num_faces_);
  tet_edges_.assign(tets, {});
  tet_faces_.assign(tets, {});
  tet_vertices_.assign(tets, {});
  face_edges_.assign(num_faces_, {});
  for (int t = 0; t < tets; ++t) {
    for (int e = 0; e < 6; ++e) tet_edges_[t][e] = elabel[6 * t + e];
    for (int v = 0; v < 4; ++v) {
      tet_vertices_[t][v] = vlabel[4 * t + v];
      tet_faces_[t][v] = flabel[4 * t + v];
    }
    for (int f = 0; f < 4; ++f) {
      std::array<int, 3> tri{};
      int k = 0;
      for (int u = 0; u < 4; ++u) {
        for (int w = u + 1; w < 4; ++w) {
          if (u != f && w != f) tri[k++] = tet_edges_[t][local_edge_index(u, w)];
        }
      }
      face_edges_[tet_faces_[t][f]] = tri;
    }
  }
}

int Triangulation::euler_characteristic() const noexcept {
  return num_vertices_ - num_edges_ + num_faces_ - num_tetrahedra();
}

Triangulation Triangulation::parse(std::string_view text) {
  std::map<int, TetGluings> by_id;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    const std::string at = "line " + std::to_string(line_no) + ": ";
    if (keyword != "tet") parse_error(at + "expected 'tet'");
    std::string id_token;
    if (!(words >> id_token) || id_token.back() != ':') parse_error(at + "expected '<id>:'");
    const int id = parse_int(std::string_view(id_token).substr(0, id_token.size() - 1), "tet id");
    TetGluings tg;
    for (int f = 0; f < 4; ++f) {
      std::string g;
      if (!(words >> g)) parse_error(at + "expected 4 face gluings");
      if (g == "-") continue;
      const auto c1 = g.find(':');
      const auto c2 = g.find(':', c1 == std::string::npos ? c1 : c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) {
        parse_error(at + "gluing must be '-' or <tet>:<face>:<perm>, got " + g);
      }
      Gluing gl;
      gl.tet = parse_int(std::string_view(g).substr(0, c1), "tet index");
      gl.face = parse_int(std::string_view(g).substr(c1 + 1, c2 - c1 - 1), "face index");
      gl.perm = parse_perm(std::string_view(g).substr(c2 + 1));
      tg[f] = gl;
    }
    std::string extra;
    if (words >> extra) parse_error(at + "trailing token " + extra);
    if (!by_id.emplace(id, tg).second) parse_error(at + "duplicate tet id " + std::to_string(id));
  }
  if (by_id.empty()) parse_error("no tetrahedra");
  std::vector<TetGluings> gluings;
  for (const auto& [id, tg] : by_id) {
    if (id != static_cast<int>(gluings.size())) parse_error("tet ids must be 0..T-1");
    gluings.push_back(tg);
  }
  return Triangulation(std::move(gluings));
}

Triangulation Triangulation::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open triangulation file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Triangulation::to_text() const {
  std::ostringstream os;
  for (int t = 0; t < num_tetrahedra(); ++t) {
    os << "tet " << t << ':';
    for (int f = 0; f < 4; ++f) {
      const auto& g = gluings_[t][f];
      if (!g) {
        os << " -";
        continue;
      }
      os << ' ' << g->tet << ':' << g->face << ':';
      for (int v : g->perm) os << v;
    }
    os << '\n';
  }
  return os.str();
}

Triangulation Triangulation::with_edge_labels(const std::vector<int>& order) const {
  if (static_cast<int>(order.size()) != num_edges_) {
    throw Error(ErrorCode::kPrecondition, "edge relabeling has the wrong length");
  }
  std::vector<int> check = order;
  std::sort(check.begin(), check.end());
  for (int i = 0; i < num_edges_; ++i) {
    if (check[i] != i) throw Error(ErrorCode::kPrecondition, "edge relabeling is not a permutation");
  }
  Triangulation out = *this;
  for (auto& edges : out.tet_edges_) {
    for (int& e : edges) e = order[e];
  }
  for (auto& tri : out.face_edges_) {
    for (int& e : tri) e = order[e];
  }
  return out;
}

Triangulation Triangulation::disjoint_union(const Triangulation& a, const Triangulation& b) {
  std::vector<TetGluings> gluings = a.gluings_;
  const int shift = a.num_tetrahedra();
  for (TetGluings tg : b.gluings_) {
    for (auto& g : tg) {
      if (g) g->tet += shift;
    }
    gluings.push_back(tg);
  }
  return Triangulation(std::move(gluings));
}

Triangulation Triangulation::s3_double() {
  TetGluings t0, t1;
  for (int f = 0; f < 4; ++f) {
    t0[f] = Gluing{1, f, {0, 1, 2, 3}};
    t1[f] = Gluing{0, f, {0, 1, 2, 3}};
  }
  return Triangulation({t0, t1});
}

}  // namespace qinv
