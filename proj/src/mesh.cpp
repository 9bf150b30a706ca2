// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <mortarfem/mesh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

namespace mortarfem {

const char* to_string(FacetTag tag) {
  switch (tag) {
    case FacetTag::Dirichlet:
      return "DIRICHLET";
    case FacetTag::Interface:
      return "INTERFACE";
  }
  return "?";
}

double LineSegment::distance_to_line(const Point& p) const {
  const Point t = tangent();
  const Point d = p - a;
  return std::abs(t.x() * d.y() - t.y() * d.x());
}

bool LineSegment::contains(const Point& p, double tol) const {
  if (distance_to_line(p) > tol) return false;
  const double s = arc_length(p);
  return s >= -tol && s <= length() + tol;
}

Geometry split_rect_geometry() {
  return {GeometryKind::SplitRect, LineSegment{Point(1.0, 0.0), Point(1.0, 1.0)}};
}

Geometry lshape_geometry() {
  return {GeometryKind::LShape, LineSegment{Point(0.0, 0.0), Point(0.0, 1.0)}};
}

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

int longest_edge(const std::vector<Point>& v, const Triangle& tri) {
  int best = 0;
  double best_len = -1.0;
  for (int l = 0; l < 3; ++l) {
    const Point& p = v[static_cast<std::size_t>(tri[static_cast<std::size_t>((l + 1) % 3)])];
    const Point& q = v[static_cast<std::size_t>(tri[static_cast<std::size_t>((l + 2) % 3)])];
    const double len = (p - q).norm();
    // strict comparison keeps the first of equally long edges
    if (len > best_len * (1.0 + 1e-12)) {
      best_len = len;
      best = l;
    }
  }
  return best;
}

}  // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
           std::map<EdgeKey, FacetTag> boundary_tags, std::vector<std::uint8_t> refinement_edge)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_tags_(std::move(boundary_tags)),
      refinement_edge_(std::move(refinement_edge)) {
  if (refinement_edge_.empty()) {
    refinement_edge_.reserve(triangles_.size());
    for (const auto& tri : triangles_)
      refinement_edge_.push_back(static_cast<std::uint8_t>(longest_edge(vertices_, tri)));
  }
  MORTARFEM_THROW_IF(refinement_edge_.size() != triangles_.size(), InvalidMesh,
                     "Mesh: refinement edge list size does not match triangle count");
  build_topology();
  validate();
}

void Mesh::build_topology() {
  triangle_edges_.resize(triangles_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (int l = 0; l < 3; ++l) {
      const Index a = tri[static_cast<std::size_t>((l + 1) % 3)];
      const Index b = tri[static_cast<std::size_t>((l + 2) % 3)];
      MORTARFEM_THROW_IF(a < 0 || b < 0 || a >= n_vertices() || b >= n_vertices(), InvalidMesh,
                         "Mesh: triangle references a missing vertex");
      const EdgeKey key = make_edge_key(a, b);
      auto [it, inserted] = edge_index_.try_emplace(key, static_cast<Index>(edges_.size()));
      if (inserted) {
        edges_.push_back(key);
        edge_triangles_.push_back({static_cast<Index>(t), -1});
      } else {
        auto& adj = edge_triangles_[static_cast<std::size_t>(it->second)];
        MORTARFEM_THROW_IF(adj[1] >= 0, InvalidMesh,
                           "Mesh: edge shared by more than two triangles");
        adj[1] = static_cast<Index>(t);
      }
      triangle_edges_[t][static_cast<std::size_t>(l)] = it->second;
    }
  }
}

void Mesh::validate() const {
  for (Index t = 0; t < n_triangles(); ++t) {
    const auto& tri = triangle(t);
    MORTARFEM_THROW_IF(signed_area(vertex(tri[0]), vertex(tri[1]), vertex(tri[2])) <= 0.0,
                       InvalidMesh,
                       "Mesh: triangle " + std::to_string(t) + " has non-positive signed area");
    MORTARFEM_THROW_IF(refinement_edge(t) < 0 || refinement_edge(t) > 2, InvalidMesh,
                       "Mesh: refinement edge index out of range");
  }
  std::size_t n_boundary = 0;
  for (Index e = 0; e < n_edges(); ++e) {
    if (!is_boundary_edge(e)) continue;
    ++n_boundary;
    MORTARFEM_THROW_IF(!boundary_tags_.contains(edge(e)), InvalidMesh,
                       "Mesh: boundary edge (" + std::to_string(edge(e).first) + "," +
                           std::to_string(edge(e).second) +
                           ") has no tag (hanging node or missing boundary tag)");
  }
  for (const auto& [key, tag] : boundary_tags_) {
    auto it = edge_index_.find(key);
    MORTARFEM_THROW_IF(it == edge_index_.end() || !is_boundary_edge(it->second), InvalidMesh,
                       "Mesh: tagged facet is not a boundary edge");
  }
  MORTARFEM_THROW_IF(n_boundary != boundary_tags_.size(), InternalError,
                     "Mesh: boundary tag count mismatch");
}

std::optional<Index> Mesh::find_edge(Index a, Index b) const {
  auto it = edge_index_.find(make_edge_key(a, b));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<FacetTag> Mesh::edge_tag(Index e) const {
  auto it = boundary_tags_.find(edge(e));
  if (it == boundary_tags_.end()) return std::nullopt;
  return it->second;
}

double Mesh::triangle_area(Index t) const {
  const auto& tri = triangle(t);
  return signed_area(vertex(tri[0]), vertex(tri[1]), vertex(tri[2]));
}

double Mesh::triangle_diameter(Index t) const {
  const auto& tri = triangle(t);
  return std::max({(vertex(tri[0]) - vertex(tri[1])).norm(),
                   (vertex(tri[1]) - vertex(tri[2])).norm(),
                   (vertex(tri[2]) - vertex(tri[0])).norm()});
}

Point Mesh::centroid(Index t) const {
  const auto& tri = triangle(t);
  return (vertex(tri[0]) + vertex(tri[1]) + vertex(tri[2])) / 3.0;
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (Index t = 0; t < n_triangles(); ++t) sum += triangle_area(t);
  return sum;
}

double Mesh::h_max() const {
  double h = 0.0;
  for (Index e = 0; e < n_edges(); ++e)
    h = std::max(h, (vertex(edge(e).first) - vertex(edge(e).second)).norm());
  return h;
}

double Mesh::min_angle() const {
  double result = std::numbers::pi;
  for (Index t = 0; t < n_triangles(); ++t) {
    const auto& tri = triangle(t);
    for (int k = 0; k < 3; ++k) {
      const Point& p = vertex(tri[static_cast<std::size_t>(k)]);
      const Point u = vertex(tri[static_cast<std::size_t>((k + 1) % 3)]) - p;
      const Point w = vertex(tri[static_cast<std::size_t>((k + 2) % 3)]) - p;
      const double c = u.dot(w) / (u.norm() * w.norm());
      result = std::min(result, std::acos(std::clamp(c, -1.0, 1.0)));
    }
  }
  return result;
}

ElementGeometry element_geometry(const Mesh& mesh, Index t) {
  MORTARFEM_THROW_IF(t < 0 || t >= mesh.n_triangles(), InvalidArgument,
                     "element_geometry: triangle index out of range");
  const auto& tri = mesh.triangle(t);
  const Point& p0 = mesh.vertex(tri[0]);
  const Point& p1 = mesh.vertex(tri[1]);
  const Point& p2 = mesh.vertex(tri[2]);

  ElementGeometry g;
  g.origin = p0;
  g.jacobian.col(0) = p1 - p0;
  g.jacobian.col(1) = p2 - p0;
  const double det = g.jacobian.determinant();
  const double scale = std::max((p1 - p0).squaredNorm(), (p2 - p0).squaredNorm());
  MORTARFEM_THROW_IF(!(det > 1e-14 * scale), InvalidMesh,
                     "element_geometry: degenerate triangle " + std::to_string(t));
  g.area = 0.5 * det;
  g.inverse_jacobian = g.jacobian.inverse();
  const std::array<const Point*, 3> p{&p0, &p1, &p2};
  for (std::size_t l = 0; l < 3; ++l) {
    const Point d = *p[(l + 2) % 3] - *p[(l + 1) % 3];
    g.edge_lengths[l] = d.norm();
    // counter-clockwise orientation: outward normal is the tangent rotated clockwise
    g.normals[l] = Point(d.y(), -d.x()) / g.edge_lengths[l];
  }
  return g;
}

Mesh gen_rect_mesh(double xmin, double xmax, double ymin, double ymax, int nx, int ny,
                   int diag_offset, std::optional<LineSegment> interface) {
  MORTARFEM_THROW_IF(nx < 1 || ny < 1, InvalidArgument,
                     "gen_rect_mesh: cell counts must be at least 1");
  MORTARFEM_THROW_IF(!(xmax > xmin) || !(ymax > ymin), InvalidArgument,
                     "gen_rect_mesh: empty rectangle");

  const auto vid = [nx](int i, int j) { return static_cast<Index>(j) * (nx + 1) + i; };
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      // hit the end points exactly so that interface nodes line up bit-for-bit
      const double x = i == nx ? xmax : xmin + (xmax - xmin) * i / nx;
      const double y = j == ny ? ymax : ymin + (ymax - ymin) * j / ny;
      vertices.emplace_back(x, y);
    }
  }

  std::vector<Triangle> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j) {
    const bool flipped = diag_offset != 0 && (j + diag_offset) % 2 == 0;
    for (int i = 0; i < nx; ++i) {
      const Index p00 = vid(i, j), p10 = vid(i + 1, j), p01 = vid(i, j + 1),
                  p11 = vid(i + 1, j + 1);
      if (flipped) {
        triangles.push_back({p00, p10, p01});
        triangles.push_back({p10, p11, p01});
      } else {
        triangles.push_back({p00, p10, p11});
        triangles.push_back({p00, p11, p01});
      }
    }
  }

  const double tol = 1e-12 * std::max(xmax - xmin, ymax - ymin);
  std::map<EdgeKey, FacetTag> tags;
  const auto tag_facet = [&](Index a, Index b) {
    FacetTag tag = FacetTag::Dirichlet;
    if (interface && interface->contains(vertices[static_cast<std::size_t>(a)], tol) &&
        interface->contains(vertices[static_cast<std::size_t>(b)], tol))
      tag = FacetTag::Interface;
    tags.emplace(make_edge_key(a, b), tag);
  };
  for (int i = 0; i < nx; ++i) {
    tag_facet(vid(i, 0), vid(i + 1, 0));
    tag_facet(vid(i, ny), vid(i + 1, ny));
  }
  for (int j = 0; j < ny; ++j) {
    tag_facet(vid(0, j), vid(0, j + 1));
    tag_facet(vid(nx, j), vid(nx, j + 1));
  }
  return Mesh(std::move(vertices), std::move(triangles), std::move(tags));
}

std::pair<Mesh, Mesh> gen_split_rect_meshes(int n1, int n2, int diag_offset) {
  const auto gamma = split_rect_geometry().interface_line;
  return {gen_rect_mesh(0.0, 1.0, 0.0, 1.0, n1, n1, diag_offset, gamma),
          gen_rect_mesh(1.0, 2.0, 0.0, 1.0, n2, n2, diag_offset, gamma)};
}

std::pair<Mesh, Mesh> gen_lshape_meshes(int n1, int n2) {
  const auto gamma = lshape_geometry().interface_line;
  return {gen_rect_mesh(-1.0, 0.0, -1.0, 1.0, n1, 2 * n1, 0, gamma),
          gen_rect_mesh(0.0, 1.0, 0.0, 1.0, n2, n2, 0, gamma)};
}

namespace {

Mesh bisect_marked_edges(const Mesh& mesh, std::vector<char> edge_marked) {
  // Conforming closure: any triangle with a marked edge needs its refinement
  // edge marked as well.
  std::vector<Index> work;
  for (Index e = 0; e < mesh.n_edges(); ++e)
    if (edge_marked[static_cast<std::size_t>(e)]) work.push_back(e);
  while (!work.empty()) {
    const Index e = work.back();
    work.pop_back();
    for (Index t : mesh.edge_triangles(e)) {
      if (t < 0) continue;
      const Index re = mesh.triangle_edge(t, mesh.refinement_edge(t));
      if (!edge_marked[static_cast<std::size_t>(re)]) {
        edge_marked[static_cast<std::size_t>(re)] = 1;
        work.push_back(re);
      }
    }
  }

  std::vector<Point> vertices(mesh.vertices().begin(), mesh.vertices().end());
  std::map<EdgeKey, Index> midpoint;
  for (Index e = 0; e < mesh.n_edges(); ++e) {
    if (!edge_marked[static_cast<std::size_t>(e)]) continue;
    const auto& [a, b] = mesh.edge(e);
    midpoint.emplace(mesh.edge(e), static_cast<Index>(vertices.size()));
    vertices.push_back(0.5 * (mesh.vertex(a) + mesh.vertex(b)));
  }

  std::vector<Triangle> triangles;
  std::vector<std::uint8_t> ref_edges;
  triangles.reserve(static_cast<std::size_t>(mesh.n_triangles()) * 2);
  ref_edges.reserve(static_cast<std::size_t>(mesh.n_triangles()) * 2);

  struct Pending {
    Triangle tri;
    int ref;
  };
  std::vector<Pending> stack;
  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    stack.push_back({mesh.triangle(t), mesh.refinement_edge(t)});
    while (!stack.empty()) {
      const Pending cur = stack.back();
      stack.pop_back();
      const auto r = static_cast<std::size_t>(cur.ref);
      const Index apex = cur.tri[r];
      const Index b = cur.tri[(r + 1) % 3];
      const Index c = cur.tri[(r + 2) % 3];
      auto it = midpoint.find(make_edge_key(b, c));
      if (it == midpoint.end()) {
        triangles.push_back(cur.tri);
        ref_edges.push_back(static_cast<std::uint8_t>(cur.ref));
        continue;
      }
      const Index m = it->second;
      // the new vertex m is opposite each child's refinement edge;
      // push in reverse so the (apex, b, m) child is emitted first
      stack.push_back({{apex, m, c}, 1});
      stack.push_back({{apex, b, m}, 2});
    }
  }

  std::map<EdgeKey, FacetTag> tags;
  for (const auto& [key, tag] : mesh.boundary_tags()) {
    auto it = midpoint.find(key);
    if (it == midpoint.end()) {
      tags.emplace(key, tag);
    } else {
      tags.emplace(make_edge_key(key.first, it->second), tag);
      tags.emplace(make_edge_key(it->second, key.second), tag);
    }
  }
  return Mesh(std::move(vertices), std::move(triangles), std::move(tags), std::move(ref_edges));
}

}  // namespace

Mesh refine(const Mesh& mesh, std::span<const Index> marked) {
  std::vector<char> edge_marked(static_cast<std::size_t>(mesh.n_edges()), 0);
  for (Index t : marked) {
    MORTARFEM_THROW_IF(t < 0 || t >= mesh.n_triangles(), InvalidArgument,
                       "refine: marked triangle index out of range");
    edge_marked[static_cast<std::size_t>(mesh.triangle_edge(t, mesh.refinement_edge(t)))] = 1;
  }
  return bisect_marked_edges(mesh, std::move(edge_marked));
}

Mesh uniform_refine(const Mesh& mesh) {
  return bisect_marked_edges(mesh, std::vector<char>(static_cast<std::size_t>(mesh.n_edges()), 1));
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  const auto old_precision = out.precision(17);
  for (const Point& p : mesh.vertices()) out << "v " << p.x() << ' ' << p.y() << '\n';
  for (const Triangle& t : mesh.triangles())
    out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& [key, tag] : mesh.boundary_tags())
    out << "f " << key.first << ' ' << key.second << ' ' << to_string(tag) << '\n';
  out.precision(old_precision);
}

}  // namespace mortarfem
