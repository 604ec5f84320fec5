// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace glwedge
{

enum class BoundaryTag
{
  OUTER = 0,
  INNER = 1,
  SIDE_MINUS = 2,
  SIDE_PLUS = 3
};

const char *TagName(BoundaryTag tag);

struct BoundaryEdge
{
  int a = 0;
  int b = 0;
  BoundaryTag tag = BoundaryTag::OUTER;
};

// Triangle mesh with tagged boundary edges. Nodes also carry tubular
// coordinates (s, t) and the arm they belong to: +1 plus arm, -1 minus arm,
// 0 on the bisector. Strips use a single arm with s = x, t = y.
struct Mesh2D
{
  std::vector<Eigen::Vector2d> nodes;
  std::vector<std::array<int, 3>> cells;
  std::vector<BoundaryEdge> boundary;
  std::vector<double> s;
  std::vector<double> t;
  std::vector<int> arm;
  double h = 0.0;

  int NumNodes() const { return static_cast<int>(nodes.size()); }
  int NumCells() const { return static_cast<int>(cells.size()); }
  double CellArea(int c) const;
  double Area() const;
  double MinAngleDegrees() const;
  // Content hash of node coordinates and connectivity.
  std::string Hash() const;
};

// Unique undirected edges with the cotangent weight sum over adjacent cells,
// 0.5 * (cot of each opposite angle).
struct EdgeList
{
  std::vector<std::array<int, 2>> edges;
  std::vector<double> cot_weight;
};

EdgeList BuildEdges(const Mesh2D &mesh);

// Mixed Voronoi area per node: circumcentric shares on non-obtuse cells,
// area / 2 to the obtuse vertex and area / 4 to the others otherwise.
std::vector<double> LumpedMass(const Mesh2D &mesh);

// Throws ValidationError if cells are not positively oriented, the tagged
// edges do not coincide with the topological boundary, or the minimum angle
// is below the gate.
void ValidateMesh(const Mesh2D &mesh, double min_angle_degrees);

// Lawson edge flips until every interior edge is locally Delaunay.
// Returns the number of flips.
int MakeDelaunay(Mesh2D &mesh);

// Region between a left curve s = left_slope * t and the line s = right
// in tubular coordinates, for t in [0, ell]. Rows are spaced by
// ell / round(ell / h), columns lie on s = right - i h. Nodes closer than
// gap_fraction * h to the left curve are dropped in favour of the curve node.
struct ZipperRegion
{
  double left_slope = 0.0;
  double right = 1.0;
  double ell = 1.0;
  double h = 0.1;
  double gap_fraction = 0.5;
};

// Half-region mesh in tubular coordinates. Nodes with arm = 0 lie on the
// left curve. Boundary tags: OUTER (t = 0), INNER (t = ell), SIDE_PLUS
// (s = right); the left curve is tagged SIDE_MINUS.
Mesh2D ZipperMesh(const ZipperRegion &region);

// Strip [0, L] x [0, ell] with s = x, t = y.
Mesh2D BuildStripMesh(double L, double ell, double h, double min_angle_degrees = 20.0);

// Mesh interchange as three CSV files: <prefix>_nodes.csv, <prefix>_cells.csv,
// <prefix>_boundary.csv.
void WriteMeshCsv(const Mesh2D &mesh, const std::string &prefix);
Mesh2D ReadMeshCsv(const std::string &prefix);

}  // namespace glwedge
