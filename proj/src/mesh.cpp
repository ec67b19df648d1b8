#include "wgpe/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace wgpe {

TriMesh TriMesh::uniform(const Rect& rect, int N)
{
  rect.validate();
  if (N < 1) {
    throw std::invalid_argument("TriMesh::uniform: N must be >= 1");
  }

  TriMesh mesh;
  mesh.rect_ = rect;
  mesh.grid_n_ = N;

  const double dx = rect.width() / N;
  const double dy = rect.height() / N;

  mesh.vertices_.reserve(static_cast<size_t>(N + 1) * (N + 1));
  for (int iy = 0; iy <= N; ++iy) {
    for (int ix = 0; ix <= N; ++ix) {
      mesh.vertices_.emplace_back(rect.xmin + ix * dx, rect.ymin + iy * dy);
    }
  }
  const auto vid = [N](int ix, int iy) { return iy * (N + 1) + ix; };

  // Each cell split along the lower-left to upper-right diagonal.
  mesh.triangles_.reserve(static_cast<size_t>(2) * N * N);
  for (int iy = 0; iy < N; ++iy) {
    for (int ix = 0; ix < N; ++ix) {
      const int v00 = vid(ix, iy);
      const int v10 = vid(ix + 1, iy);
      const int v01 = vid(ix, iy + 1);
      const int v11 = vid(ix + 1, iy + 1);
      mesh.triangles_.push_back({v00, v10, v11});
      mesh.triangles_.push_back({v00, v11, v01});
    }
  }

  // Global edges, lexicographic by (min vertex, max vertex).
  std::map<std::pair<int, int>, int> edge_index;
  for (const auto& tri : mesh.triangles_) {
    for (int le = 0; le < 3; ++le) {
      const int a = tri[le];
      const int b = tri[(le + 1) % 3];
      edge_index.emplace(std::minmax(a, b), -1);
    }
  }
  int next = 0;
  for (auto& [key, idx] : edge_index) {
    idx = next++;
  }

  mesh.edges_.resize(edge_index.size());
  for (const auto& [key, idx] : edge_index) {
    mesh.edges_[idx] = Edge{key.first, key.second, -1, -1, true};
  }

  mesh.tri_edges_.resize(mesh.triangles_.size());
  mesh.tri_edge_signs_.resize(mesh.triangles_.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles_[t];
    for (int le = 0; le < 3; ++le) {
      const int a = tri[le];
      const int b = tri[(le + 1) % 3];
      const int e = edge_index.at(std::minmax(a, b));
      mesh.tri_edges_[t][le] = e;
      mesh.tri_edge_signs_[t][le] = (a < b) ? 1 : -1;
      Edge& edge = mesh.edges_[e];
      if (a < b) {
        edge.tri_in = t;
      } else {
        edge.tri_out = t;
      }
    }
  }

  mesh.num_boundary_edges_ = 0;
  for (auto& e : mesh.edges_) {
    e.boundary = (e.tri_in < 0 || e.tri_out < 0);
    if (e.boundary) {
      ++mesh.num_boundary_edges_;
      if (e.tri_in < 0) {
        e.tri_in = e.tri_out;
        e.tri_out = -1;
      }
    }
  }

  mesh.areas_.resize(mesh.triangles_.size());
  mesh.h_tri_.resize(mesh.triangles_.size());
  mesh.total_area_ = 0.0;
  // Every triangle's longest side is the cell diagonal; computing it from the
  // cell widths (not from rounded vertex coordinates) keeps h(2N) = h(N)/2
  // exact in floating point.
  const double diag = std::sqrt(dx * dx + dy * dy);
  mesh.h_ = diag;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles_[t];
    const Vec2& p0 = mesh.vertices_[tri[0]];
    const Vec2& p1 = mesh.vertices_[tri[1]];
    const Vec2& p2 = mesh.vertices_[tri[2]];
    const double two_area =
        (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
    if (two_area <= 0.0) {
      throw std::logic_error("TriMesh::uniform: non-positive triangle area");
    }
    mesh.areas_[t] = 0.5 * two_area;
    mesh.total_area_ += mesh.areas_[t];
    mesh.h_tri_[t] = diag;
  }

  mesh.edge_lengths_.resize(mesh.edges_.size());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges_[e];
    mesh.edge_lengths_[e] = (mesh.vertices_[ed.v1] - mesh.vertices_[ed.v0]).norm();
  }

  return mesh;
}

Vec2 TriMesh::centroid(int t) const
{
  const auto& tri = triangles_[t];
  return (vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]]) / 3.0;
}

Vec2 TriMesh::edge_midpoint(int e) const
{
  const Edge& ed = edges_[e];
  return 0.5 * (vertices_[ed.v0] + vertices_[ed.v1]);
}

Vec2 TriMesh::edge_tangent(int e) const
{
  const Edge& ed = edges_[e];
  return (vertices_[ed.v1] - vertices_[ed.v0]) / edge_lengths_[e];
}

Vec2 TriMesh::outward_normal(int t, int le) const
{
  const auto& tri = triangles_[t];
  const Vec2& a = vertices_[tri[le]];
  const Vec2& b = vertices_[tri[(le + 1) % 3]];
  const Vec2 tang = b - a;
  // Clockwise rotation of the ccw traversal direction points outward.
  const double len = tang.norm();
  return Vec2(tang.y() / len, -tang.x() / len);
}

void TriMesh::export_node_ele(const std::string& prefix) const
{
  std::ofstream node(prefix + ".node");
  if (!node) {
    throw std::runtime_error("TriMesh::export_node_ele: cannot open " + prefix + ".node");
  }
  node.precision(17);
  node << num_vertices() << " 2 0 0\n";
  for (int v = 0; v < num_vertices(); ++v) {
    node << v << " " << vertices_[v].x() << " " << vertices_[v].y() << "\n";
  }

  std::ofstream ele(prefix + ".ele");
  if (!ele) {
    throw std::runtime_error("TriMesh::export_node_ele: cannot open " + prefix + ".ele");
  }
  ele << num_triangles() << " 3 0\n";
  for (int t = 0; t < num_triangles(); ++t) {
    ele << t << " " << triangles_[t][0] << " " << triangles_[t][1] << " "
        << triangles_[t][2] << "\n";
  }
}

}  // namespace wgpe
