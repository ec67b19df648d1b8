// Uniform triangulations of axis-aligned rectangles with full element/edge
// connectivity: every cell of an N x N grid is split along the lower-left to
// upper-right diagonal, giving the classical criss-free uniform pattern.

#ifndef WGPE_MESH_HPP
#define WGPE_MESH_HPP

#include "wgpe/geometry.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace wgpe {

/// Triangle mesh of a rectangle. Immutable after construction.
///
/// Conventions:
///  - triangle vertices are listed counterclockwise;
///  - local edge i of a triangle connects local vertices i and (i+1) mod 3;
///  - global edges are numbered lexicographically by (min vertex, max vertex)
///    and oriented from the lower-indexed to the higher-indexed vertex.
class TriMesh {
public:
  struct Edge {
    int v0;        // lower vertex index
    int v1;        // higher vertex index
    int tri_in;    // triangle on the left of v0->v1 (always set)
    int tri_out;   // triangle on the right, -1 for boundary edges
    bool boundary;
  };

  /// Uniform N x N triangulation of `rect` (2 N^2 triangles).
  /// Throws std::invalid_argument for N < 1 or a degenerate rectangle.
  static TriMesh uniform(const Rect& rect, int N);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_boundary_edges() const { return num_boundary_edges_; }
  int num_interior_edges() const { return num_edges() - num_boundary_edges_; }

  const Rect& rect() const { return rect_; }
  int grid_n() const { return grid_n_; }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const Edge& edge(int e) const { return edges_[e]; }

  /// Global edge index of local edge `le` of triangle `t`.
  int tri_edge(int t, int le) const { return tri_edges_[t][le]; }
  /// +1 if the global edge orientation (low->high vertex) agrees with the
  /// counterclockwise traversal of triangle `t`, else -1.
  int tri_edge_sign(int t, int le) const { return tri_edge_signs_[t][le]; }

  double area(int t) const { return areas_[t]; }
  Vec2 centroid(int t) const;
  /// Element diameter h_T (longest side).
  double h_tri(int t) const { return h_tri_[t]; }
  /// Mesh size h = max_T h_T.
  double h() const { return h_; }

  double edge_length(int e) const { return edge_lengths_[e]; }
  Vec2 edge_midpoint(int e) const;
  /// Unit tangent of edge `e`, oriented from its lower to higher vertex.
  Vec2 edge_tangent(int e) const;

  /// Outward unit normal of triangle `t` across its local edge `le`.
  Vec2 outward_normal(int t, int le) const;

  /// Total mesh area (sum of element areas).
  double total_area() const { return total_area_; }

  /// Writes Triangle-style `<prefix>.node` / `<prefix>.ele` files.
  void export_node_ele(const std::string& prefix) const;

private:
  Rect rect_;
  int grid_n_ = 0;
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<std::array<int, 3>> tri_edge_signs_;
  std::vector<double> areas_;
  std::vector<double> h_tri_;
  std::vector<double> edge_lengths_;
  double h_ = 0.0;
  double total_area_ = 0.0;
  int num_boundary_edges_ = 0;
};

}  // namespace wgpe

#endif
