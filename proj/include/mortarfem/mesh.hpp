// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mortarfem/common.hpp>

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mortarfem {

enum class FacetTag : std::uint8_t { Dirichlet, Interface };

const char* to_string(FacetTag tag);

/// Vertex triple, counter-clockwise.
using Triangle = std::array<Index, 3>;

/// Unordered vertex pair stored with first < second.
using EdgeKey = std::pair<Index, Index>;

inline EdgeKey make_edge_key(Index a, Index b) {
  return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

/// Straight segment from `a` to `b`, parametrized by arc length from `a`.
struct LineSegment {
  Point a;
  Point b;

  double length() const { return (b - a).norm(); }
  Point tangent() const { return (b - a) / length(); }
  double arc_length(const Point& p) const { return (p - a).dot(tangent()); }
  Point at(double s) const { return a + s * tangent(); }
  double distance_to_line(const Point& p) const;
  /// True if `p` lies on the segment up to `tol` (absolute, length units).
  bool contains(const Point& p, double tol) const;
};

enum class GeometryKind { SplitRect, LShape };

struct Geometry {
  GeometryKind kind;
  LineSegment interface_line;
};

/// (0,1)^2 | (1,2)x(0,1), interface x = 1.
Geometry split_rect_geometry();
/// (-1,0)x(-1,1) | (0,1)^2, interface x = 0, y in [0,1].
Geometry lshape_geometry();

/// Conforming triangulation of one subdomain.
///
/// Triangles are stored counter-clockwise. Local edge `l` of a triangle is the
/// edge opposite its local vertex `l`. `refinement_edge(t)` is the local index
/// of the edge that newest-vertex bisection splits next. Construction checks
/// orientation, conformity and that every boundary edge carries exactly one
/// tag; violations throw InvalidMesh. Instances are immutable.
class Mesh {
public:
  Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
       std::map<EdgeKey, FacetTag> boundary_tags,
       std::vector<std::uint8_t> refinement_edge = {});

  Index n_vertices() const { return static_cast<Index>(vertices_.size()); }
  Index n_triangles() const { return static_cast<Index>(triangles_.size()); }
  Index n_edges() const { return static_cast<Index>(edges_.size()); }

  const Point& vertex(Index i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const Triangle& triangle(Index t) const { return triangles_[static_cast<std::size_t>(t)]; }
  std::span<const Point> vertices() const { return vertices_; }
  std::span<const Triangle> triangles() const { return triangles_; }
  const std::map<EdgeKey, FacetTag>& boundary_tags() const { return boundary_tags_; }
  int refinement_edge(Index t) const { return refinement_edge_[static_cast<std::size_t>(t)]; }

  /// Global edge `e` as a sorted vertex pair.
  const EdgeKey& edge(Index e) const { return edges_[static_cast<std::size_t>(e)]; }
  /// Global index of local edge `l` (opposite local vertex `l`) of triangle `t`.
  Index triangle_edge(Index t, int l) const {
    return triangle_edges_[static_cast<std::size_t>(t)][static_cast<std::size_t>(l)];
  }
  /// Triangles adjacent to edge `e`; the second entry is -1 on the boundary.
  const std::array<Index, 2>& edge_triangles(Index e) const {
    return edge_triangles_[static_cast<std::size_t>(e)];
  }
  std::optional<Index> find_edge(Index a, Index b) const;
  std::optional<FacetTag> edge_tag(Index e) const;
  bool is_boundary_edge(Index e) const { return edge_triangles(e)[1] < 0; }

  /// Local edge endpoints of triangle `t` for local edge `l`.
  std::pair<Index, Index> local_edge_vertices(Index t, int l) const {
    const auto& tri = triangle(t);
    return {tri[static_cast<std::size_t>((l + 1) % 3)], tri[static_cast<std::size_t>((l + 2) % 3)]};
  }

  double triangle_area(Index t) const;
  double triangle_diameter(Index t) const;
  Point centroid(Index t) const;
  double total_area() const;
  double h_max() const;
  /// Smallest interior angle over all triangles, in radians.
  double min_angle() const;

private:
  void build_topology();
  void validate() const;

  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::map<EdgeKey, FacetTag> boundary_tags_;
  std::vector<std::uint8_t> refinement_edge_;

  std::vector<EdgeKey> edges_;
  std::map<EdgeKey, Index> edge_index_;
  std::vector<std::array<Index, 3>> triangle_edges_;
  std::vector<std::array<Index, 2>> edge_triangles_;
};

/// Affine element data. The reference triangle is (0,0), (1,0), (0,1);
/// x = origin + jacobian * xi.
struct ElementGeometry {
  double area = 0.0;
  std::array<double, 3> edge_lengths{};
  std::array<Point, 3> normals{};
  Point origin = Point::Zero();
  Eigen::Matrix2d jacobian = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d inverse_jacobian = Eigen::Matrix2d::Zero();

  Point to_physical(const Point& xi) const { return origin + jacobian * xi; }
  Point to_reference(const Point& x) const { return inverse_jacobian * (x - origin); }
  /// Maps reference gradients to physical ones: B^{-T} g.
  Point physical_gradient(const Point& ref_grad) const {
    return inverse_jacobian.transpose() * ref_grad;
  }
};

ElementGeometry element_geometry(const Mesh& mesh, Index t);

/// Structured triangulation of [xmin,xmax]x[ymin,ymax] with nx*ny cells split
/// into two triangles each. `diag_offset == 0` uses the (x0,y0)-(x1,y1)
/// diagonal in every cell; otherwise rows with (j + diag_offset) even use the
/// opposite diagonal. Boundary facets on `interface` are tagged Interface,
/// all others Dirichlet.
Mesh gen_rect_mesh(double xmin, double xmax, double ymin, double ymax, int nx, int ny,
                   int diag_offset = 0, std::optional<LineSegment> interface = std::nullopt);

/// Non-matching pair for the split rectangle: n1 x n1 cells on (0,1)^2 and
/// n2 x n2 cells on (1,2)x(0,1). `diag_offset` is passed to both
/// gen_rect_mesh calls.
std::pair<Mesh, Mesh> gen_split_rect_meshes(int n1 = 3, int n2 = 4, int diag_offset = 0);

/// L-shape (-1,1)^2 minus [0,1)x(-1,0]: subdomain 1 is (-1,0)x(-1,1) with
/// n1 x 2*n1 cells, subdomain 2 is (0,1)^2 with n2 x n2 cells.
std::pair<Mesh, Mesh> gen_lshape_meshes(int n1 = 2, int n2 = 3);

/// Newest-vertex bisection of the marked triangles plus conforming closure.
Mesh refine(const Mesh& mesh, std::span<const Index> marked);

/// Every edge halved; each triangle becomes four.
Mesh uniform_refine(const Mesh& mesh);

/// Plain-text dump: `v x y`, `t i j k`, `f i j TAG`.
void write_mesh(std::ostream& out, const Mesh& mesh);

}  // namespace mortarfem
