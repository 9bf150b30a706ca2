// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "test_support.hpp"

#include <mortarfem/mesh.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace mortarfem;

namespace {

Mesh unit_triangle() {
  return Mesh({Point(0, 0), Point(1, 0), Point(0, 1)}, {Triangle{0, 1, 2}},
              {{make_edge_key(0, 1), FacetTag::Dirichlet},
               {make_edge_key(1, 2), FacetTag::Dirichlet},
               {make_edge_key(0, 2), FacetTag::Dirichlet}});
}

void expect_conforming(const Mesh& m) {
  for (Index e = 0; e < m.n_edges(); ++e) {
    const auto& adj = m.edge_triangles(e);
    EXPECT_GE(adj[0], 0);
    if (adj[1] < 0) {
      EXPECT_TRUE(m.edge_tag(e).has_value());
    } else {
      EXPECT_FALSE(m.edge_tag(e).has_value());
      EXPECT_NE(adj[0], adj[1]);
    }
  }
  // every edge of every triangle is counted once per triangle
  std::vector<int> count(static_cast<std::size_t>(m.n_edges()), 0);
  for (Index t = 0; t < m.n_triangles(); ++t)
    for (int l = 0; l < 3; ++l) ++count[static_cast<std::size_t>(m.triangle_edge(t, l))];
  for (Index e = 0; e < m.n_edges(); ++e) EXPECT_EQ(count[static_cast<std::size_t>(e)], m.is_boundary_edge(e) ? 1 : 2);
}

double max_edge(const Mesh& m) {
  double h = 0.0;
  for (Index e = 0; e < m.n_edges(); ++e) h = std::max(h, (m.vertex(m.edge(e).first) - m.vertex(m.edge(e).second)).norm());
  return h;
}

void expect_interface_tags_on_line(const Mesh& m, const LineSegment& line) {
  for (const auto& [key, tag] : m.boundary_tags()) {
    if (tag != FacetTag::Interface) continue;
    EXPECT_LT(line.distance_to_line(m.vertex(key.first)), 1e-12);
    EXPECT_LT(line.distance_to_line(m.vertex(key.second)), 1e-12);
  }
}

}  // namespace

TEST(GenRectMesh, SingleCell) {
  const Mesh m = gen_rect_mesh(0, 1, 0, 1, 1, 1, 0);
  EXPECT_EQ(m.n_vertices(), 4);
  EXPECT_EQ(m.n_triangles(), 2);
}

TEST(GenRectMesh, TwoByTwo) {
  const Mesh m = gen_rect_mesh(0, 1, 0, 1, 2, 2, 0);
  EXPECT_EQ(m.n_vertices(), 9);
  EXPECT_EQ(m.n_triangles(), 8);
  EXPECT_NEAR(m.total_area(), 1.0, 1e-14);
  expect_conforming(m);
}

TEST(GenRectMesh, DiagonalOffsetKeepsCountsAndArea) {
  const Mesh a = gen_rect_mesh(0, 2, 0, 1, 3, 2, 0);
  const Mesh b = gen_rect_mesh(0, 2, 0, 1, 3, 2, 1);
  EXPECT_EQ(a.n_triangles(), b.n_triangles());
  EXPECT_NEAR(b.total_area(), 2.0, 1e-14);
  expect_conforming(b);
  bool differs = false;
  for (Index t = 0; t < a.n_triangles(); ++t) differs |= a.triangle(t) != b.triangle(t);
  EXPECT_TRUE(differs);
}

TEST(GenRectMesh, RejectsBadArguments) {
  EXPECT_THROW(gen_rect_mesh(0, 1, 0, 1, 0, 1), InvalidArgument);
  EXPECT_THROW(gen_rect_mesh(0, 1, 0, 1, 1, 0), InvalidArgument);
  EXPECT_THROW(gen_rect_mesh(1, 0, 0, 1, 1, 1), InvalidArgument);
}

TEST(GenRectMesh, InterfaceTagging) {
  const Geometry g = split_rect_geometry();
  const Mesh m = gen_rect_mesh(0, 1, 0, 1, 3, 3, 0, g.interface_line);
  int n_interface = 0;
  for (const auto& [key, tag] : m.boundary_tags()) {
    if (tag == FacetTag::Interface) ++n_interface;
  }
  EXPECT_EQ(n_interface, 3);
  EXPECT_EQ(m.boundary_tags().size(), 12u);
  expect_interface_tags_on_line(m, g.interface_line);
}

TEST(SplitRectMeshes, InterfaceNodesShareOnlyEndpoints) {
  const auto [m1, m2] = gen_split_rect_meshes(3, 4);
  const auto ys = [](const Mesh& m) {
    std::set<long long> out;
    for (const auto& [key, tag] : m.boundary_tags())
      if (tag == FacetTag::Interface)
        for (Index v : {key.first, key.second}) out.insert(std::llround(m.vertex(v).y() * 1e9));
    return out;
  };
  const auto y1 = ys(m1), y2 = ys(m2);
  EXPECT_EQ(y1.size(), 4u);
  EXPECT_EQ(y2.size(), 5u);
  std::set<long long> common;
  for (auto y : y1)
    if (y2.contains(y)) common.insert(y);
  EXPECT_EQ(common, (std::set<long long>{0, 1000000000}));
}

TEST(LShapeMeshes, CoverAreaThreeAndAvoidRemovedQuadrant) {
  const auto [m1, m2] = gen_lshape_meshes();
  EXPECT_NEAR(m1.total_area() + m2.total_area(), 3.0, 1e-12);
  for (const Mesh* m : {&m1, &m2})
    for (Index t = 0; t < m->n_triangles(); ++t) {
      const Point c = m->centroid(t);
      EXPECT_FALSE(c.x() > 0.0 && c.y() < 0.0);
      for (Index v : m->triangle(t)) EXPECT_FALSE(m->vertex(v).x() > 1e-14 && m->vertex(v).y() < -1e-14);
    }
  const LineSegment gamma = lshape_geometry().interface_line;
  for (const Mesh* m : {&m1, &m2}) {
    int n_interface = 0;
    for (const auto& [key, tag] : m->boundary_tags()) {
      const bool on_gamma = gamma.contains(m->vertex(key.first), 1e-12) && gamma.contains(m->vertex(key.second), 1e-12);
      EXPECT_EQ(tag == FacetTag::Interface, on_gamma);
      n_interface += on_gamma;
    }
    EXPECT_GT(n_interface, 0);
  }
}

TEST(ElementGeometry, UnitRightTriangle) {
  const Mesh m = unit_triangle();
  const ElementGeometry g = element_geometry(m, 0);
  EXPECT_DOUBLE_EQ(g.area, 0.5);
  // local edge 0 is the hypotenuse, opposite vertex 0
  EXPECT_NEAR(g.normals[0].x(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(g.normals[0].y(), 1.0 / std::sqrt(2.0), 1e-15);
  std::multiset<double> lengths(g.edge_lengths.begin(), g.edge_lengths.end());
  std::multiset<double> expected{1.0, 1.0, std::sqrt(2.0)};
  auto it = expected.begin();
  for (double l : lengths) EXPECT_NEAR(l, *it++, 1e-15);
  for (const Point& n : g.normals) EXPECT_NEAR(n.norm(), 1.0, 1e-15);
  const Point x(0.2, 0.3);
  EXPECT_NEAR((g.to_physical(g.to_reference(x)) - x).norm(), 0.0, 1e-15);
}

TEST(ElementGeometry, OutwardNormalsPointAwayFromCentroid) {
  const Mesh m = gen_rect_mesh(0, 2, 0, 1, 2, 3, 1);
  for (Index t = 0; t < m.n_triangles(); ++t) {
    const auto g = element_geometry(m, t);
    for (int l = 0; l < 3; ++l) {
      const auto [a, b] = m.local_edge_vertices(t, l);
      const Point mid = 0.5 * (m.vertex(a) + m.vertex(b));
      EXPECT_GT(g.normals[static_cast<std::size_t>(l)].dot(mid - m.centroid(t)), 0.0);
      EXPECT_NEAR(g.normals[static_cast<std::size_t>(l)].dot(m.vertex(b) - m.vertex(a)), 0.0, 1e-14);
    }
  }
}

TEST(MeshValidation, RejectsHangingNode) {
  // two triangles on the left, one big triangle on the right whose edge
  // spans the left pair's split edge
  std::vector<Point> v{Point(0, 0), Point(1, 0), Point(1, 0.5), Point(1, 1), Point(0, 1), Point(2, 0.5)};
  std::vector<Triangle> t{{0, 1, 2}, {0, 2, 4}, {2, 3, 4}, {1, 5, 3}};
  std::map<EdgeKey, FacetTag> tags;
  for (auto [a, b] : {std::pair{0, 1}, {3, 4}, {4, 0}, {1, 5}, {5, 3}})
    tags[make_edge_key(a, b)] = FacetTag::Dirichlet;
  EXPECT_THROW(Mesh(v, t, tags), InvalidMesh);
}

TEST(MeshValidation, RejectsClockwiseTriangle) {
  EXPECT_THROW(Mesh({Point(0, 0), Point(0, 1), Point(1, 0)}, {Triangle{0, 1, 2}},
                    {{make_edge_key(0, 1), FacetTag::Dirichlet},
                     {make_edge_key(1, 2), FacetTag::Dirichlet},
                     {make_edge_key(0, 2), FacetTag::Dirichlet}}),
               InvalidMesh);
}

TEST(MeshValidation, RejectsUntaggedBoundary) {
  EXPECT_THROW(Mesh({Point(0, 0), Point(1, 0), Point(0, 1)}, {Triangle{0, 1, 2}},
                    {{make_edge_key(0, 1), FacetTag::Dirichlet}, {make_edge_key(1, 2), FacetTag::Dirichlet}}),
               InvalidMesh);
}

TEST(Refine, SingleTriangleBisection) {
  const Mesh r = refine(unit_triangle(), std::vector<Index>{0});
  EXPECT_EQ(r.n_triangles(), 2);
  EXPECT_EQ(r.n_vertices(), 4);
  EXPECT_NEAR(r.total_area(), 0.5, 1e-15);
  // the longest edge is bisected first
  EXPECT_TRUE(r.find_edge(0, 3).has_value());
  EXPECT_NEAR((r.vertex(3) - Point(0.5, 0.5)).norm(), 0.0, 1e-15);
  expect_conforming(r);
}

TEST(Refine, EmptyMarkingIsIdentity) {
  const Mesh m = gen_rect_mesh(0, 1, 0, 1, 2, 2, 1);
  const Mesh r = refine(m, std::vector<Index>{});
  ASSERT_EQ(r.n_vertices(), m.n_vertices());
  ASSERT_EQ(r.n_triangles(), m.n_triangles());
  for (Index i = 0; i < m.n_vertices(); ++i) EXPECT_EQ(r.vertex(i), m.vertex(i));
  for (Index t = 0; t < m.n_triangles(); ++t) {
    EXPECT_EQ(r.triangle(t), m.triangle(t));
    EXPECT_EQ(r.refinement_edge(t), m.refinement_edge(t));
  }
  EXPECT_EQ(r.boundary_tags(), m.boundary_tags());
}

TEST(Refine, ClosureRemovesHangingNodeOnSharedDiagonal) {
  const Mesh m = gen_rect_mesh(0, 1, 0, 1, 1, 1);
  const Mesh r = refine(m, std::vector<Index>{0});
  EXPECT_GE(r.n_triangles(), 3);
  expect_conforming(r);
  // the diagonal midpoint is a vertex of triangles on both sides
  Index mid = -1;
  for (Index i = 0; i < r.n_vertices(); ++i)
    if ((r.vertex(i) - Point(0.5, 0.5)).norm() < 1e-15) mid = i;
  ASSERT_GE(mid, 0);
  bool below = false, above = false;
  for (Index t = 0; t < r.n_triangles(); ++t) {
    const auto& tri = r.triangle(t);
    if (std::find(tri.begin(), tri.end(), mid) == tri.end()) continue;
    const Point c = r.centroid(t);
    (c.x() > c.y() ? below : above) = true;
  }
  EXPECT_TRUE(below);
  EXPECT_TRUE(above);
}

TEST(Refine, RejectsOutOfRangeIndex) {
  EXPECT_THROW(refine(unit_triangle(), std::vector<Index>{1}), InvalidArgument);
}

TEST(UniformRefine, QuartersTriangles) {
  const Mesh m = gen_rect_mesh(0, 1, 0, 1, 1, 1);
  const Mesh r = uniform_refine(m);
  EXPECT_EQ(r.n_triangles(), 8);
  EXPECT_NEAR(max_edge(r) / max_edge(m), 0.5, 1e-12);
  expect_conforming(r);
}

TEST(UniformRefine, TwoLevelsQuarterEveryArea) {
  const Mesh m = gen_rect_mesh(0, 2, 0, 1, 2, 3, 1);
  const Mesh r = uniform_refine(uniform_refine(m));
  ASSERT_EQ(r.n_triangles(), 16 * m.n_triangles());
  std::multiset<long long> parent, child;
  for (Index t = 0; t < m.n_triangles(); ++t) parent.insert(std::llround(m.triangle_area(t) / 16.0 * 1e12));
  for (Index t = 0; t < r.n_triangles(); ++t) child.insert(std::llround(r.triangle_area(t) * 1e12));
  for (long long a : parent) EXPECT_EQ(child.count(a), 16 * parent.count(a));
  EXPECT_NEAR(r.h_max() / m.h_max(), 0.25, 1e-12);
}

TEST(RefineProperty, RandomSequencesKeepInvariants) {
  using support::rng;
  const Geometry g = split_rect_geometry();
  Mesh m = gen_rect_mesh(0, 1, 0, 1, 3, 3, 0, g.interface_line);
  const double area = m.total_area();
  const double angle0 = m.min_angle();
  for (int step = 0; step < 12; ++step) {
    std::vector<Index> marked;
    for (Index t = 0; t < m.n_triangles(); ++t)
      if (std::uniform_int_distribution<int>(0, 4)(rng()) == 0) marked.push_back(t);
    const Index before = m.n_triangles();
    m = refine(m, marked);
    EXPECT_GE(m.n_triangles(), before + static_cast<Index>(marked.size()));
    EXPECT_NEAR(m.total_area(), area, 1e-13 * area);
    EXPECT_GE(m.min_angle(), 0.5 * angle0 - 1e-12);
    expect_conforming(m);
    expect_interface_tags_on_line(m, g.interface_line);
  }
}

TEST(WriteMesh, EmitsAllRecords) {
  const Mesh m = gen_rect_mesh(0, 1, 0, 1, 1, 1);
  std::ostringstream os;
  write_mesh(os, m);
  std::istringstream is(os.str());
  std::string kind;
  int v = 0, t = 0, f = 0;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    ls >> kind;
    v += kind == "v";
    t += kind == "t";
    f += kind == "f";
  }
  EXPECT_EQ(v, 4);
  EXPECT_EQ(t, 2);
  EXPECT_EQ(f, 4);
  EXPECT_STREQ(to_string(FacetTag::Interface), "INTERFACE");
}
