// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <numeric>

#include <gtest/gtest.h>

#include "glwedge/mesh.hpp"
#include "glwedge/numerics.hpp"

namespace glwedge
{
namespace
{

TEST(Mesh, StripAreaAndAngles)
{
  const Mesh2D mesh = BuildStripMesh(3.0, 2.0, 0.25);
  EXPECT_EQ(mesh.NumNodes(), 13 * 9);
  EXPECT_EQ(mesh.NumCells(), 2 * 12 * 8);
  EXPECT_NEAR(mesh.Area(), 6.0, 1e-12);
  EXPECT_NEAR(mesh.MinAngleDegrees(), 45.0, 1e-9);
}

TEST(Mesh, LumpedMassIsVoronoiAreaOnLattice)
{
  const double h = 0.25;
  const Mesh2D mesh = BuildStripMesh(3.0, 2.0, h);
  const std::vector<double> m = LumpedMass(mesh);
  EXPECT_NEAR(std::accumulate(m.begin(), m.end(), 0.0), 6.0, 1e-12);
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    const bool edge_s = std::abs(mesh.s[i]) < 1e-12 || std::abs(mesh.s[i] - 3.0) < 1e-12;
    const bool edge_t = std::abs(mesh.t[i]) < 1e-12 || std::abs(mesh.t[i] - 2.0) < 1e-12;
    const double expected = h * h * (edge_s ? 0.5 : 1.0) * (edge_t ? 0.5 : 1.0);
    EXPECT_NEAR(m[i], expected, 1e-14) << "node " << i;
  }
}

TEST(Mesh, CotangentWeightsOnRightTriangles)
{
  const Mesh2D mesh = BuildStripMesh(1.0, 1.0, 0.25);
  const EdgeList edges = BuildEdges(mesh);
  for (std::size_t e = 0; e < edges.edges.size(); e++)
  {
    const auto d = mesh.nodes[edges.edges[e][1]] - mesh.nodes[edges.edges[e][0]];
    const bool diagonal = std::abs(d.x()) > 1e-12 && std::abs(d.y()) > 1e-12;
    if (diagonal)
    {
      EXPECT_NEAR(edges.cot_weight[e], 0.0, 1e-12);
    }
    else
    {
      EXPECT_GE(edges.cot_weight[e], 0.5 - 1e-12);
    }
  }
}

TEST(Mesh, ValidateRejectsInvertedCell)
{
  Mesh2D mesh = BuildStripMesh(1.0, 1.0, 0.25);
  std::swap(mesh.cells[0][0], mesh.cells[0][1]);
  EXPECT_THROW(ValidateMesh(mesh, 20.0), ValidationError);
}

TEST(Mesh, ValidateRejectsMissingBoundaryTag)
{
  Mesh2D mesh = BuildStripMesh(1.0, 1.0, 0.25);
  mesh.boundary.pop_back();
  EXPECT_THROW(ValidateMesh(mesh, 20.0), ValidationError);
}

TEST(Mesh, DelaunayFlipRemovesObtuseOpposition)
{
  // A flat quad split along its long diagonal must flip.
  Mesh2D mesh;
  mesh.nodes = {{0.0, 0.0}, {1.0, -0.2}, {2.0, 0.0}, {1.0, 0.2}};
  mesh.cells = {{0, 1, 2}, {0, 2, 3}};
  EXPECT_EQ(MakeDelaunay(mesh), 1);
  EXPECT_EQ(MakeDelaunay(mesh), 0);
}

TEST(Mesh, CsvRoundTrip)
{
  const Mesh2D mesh = BuildStripMesh(1.0, 0.5, 0.25);
  const auto dir = std::filesystem::temp_directory_path() / "glwedge_mesh_test";
  std::filesystem::create_directories(dir);
  const std::string prefix = (dir / "strip").string();
  WriteMeshCsv(mesh, prefix);
  const Mesh2D back = ReadMeshCsv(prefix);
  EXPECT_EQ(back.Hash(), mesh.Hash());
  EXPECT_EQ(back.boundary.size(), mesh.boundary.size());
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace glwedge
