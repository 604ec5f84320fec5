// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "glwedge/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_map>

#include "glwedge/numerics.hpp"

namespace glwedge
{

namespace
{

std::uint64_t EdgeKey(int a, int b)
{
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (lo << 32) | hi;
}

double Cross(const Eigen::Vector2d &u, const Eigen::Vector2d &v)
{
  return u.x() * v.y() - u.y() * v.x();
}

// Angle at vertex p of the triangle (p, q, r).
double AngleAt(const Eigen::Vector2d &p, const Eigen::Vector2d &q, const Eigen::Vector2d &r)
{
  const Eigen::Vector2d u = q - p, v = r - p;
  return std::atan2(std::abs(Cross(u, v)), u.dot(v));
}

}  // namespace

const char *TagName(BoundaryTag tag)
{
  switch (tag)
  {
    case BoundaryTag::OUTER:
      return "OUTER";
    case BoundaryTag::INNER:
      return "INNER";
    case BoundaryTag::SIDE_MINUS:
      return "SIDE_MINUS";
    case BoundaryTag::SIDE_PLUS:
      return "SIDE_PLUS";
  }
  return "UNKNOWN";
}

double Mesh2D::CellArea(int c) const
{
  const auto &tri = cells[c];
  return 0.5 * Cross(nodes[tri[1]] - nodes[tri[0]], nodes[tri[2]] - nodes[tri[0]]);
}

double Mesh2D::Area() const
{
  double a = 0.0;
  for (int c = 0; c < NumCells(); c++)
  {
    a += CellArea(c);
  }
  return a;
}

double Mesh2D::MinAngleDegrees() const
{
  double m = 180.0;
  for (const auto &tri : cells)
  {
    for (int k = 0; k < 3; k++)
    {
      const double ang = AngleAt(nodes[tri[k]], nodes[tri[(k + 1) % 3]], nodes[tri[(k + 2) % 3]]);
      m = std::min(m, ang * 180.0 / std::numbers::pi);
    }
  }
  return m;
}

std::string Mesh2D::Hash() const
{
  std::ostringstream os;
  os.precision(17);
  for (const auto &p : nodes)
  {
    os << p.x() << ',' << p.y() << ';';
  }
  for (const auto &c : cells)
  {
    os << c[0] << ',' << c[1] << ',' << c[2] << ';';
  }
  for (const auto &e : boundary)
  {
    os << e.a << ',' << e.b << ',' << static_cast<int>(e.tag) << ';';
  }
  return HashHex(os.str());
}

EdgeList BuildEdges(const Mesh2D &mesh)
{
  EdgeList out;
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(3 * mesh.cells.size());
  for (const auto &tri : mesh.cells)
  {
    for (int k = 0; k < 3; k++)
    {
      const int i = tri[(k + 1) % 3], j = tri[(k + 2) % 3];
      const Eigen::Vector2d &p = mesh.nodes[tri[k]];
      const Eigen::Vector2d u = mesh.nodes[i] - p, v = mesh.nodes[j] - p;
      const double cot = u.dot(v) / std::abs(Cross(u, v));
      const std::uint64_t key = EdgeKey(i, j);
      auto it = index.find(key);
      int id;
      if (it == index.end())
      {
        id = static_cast<int>(out.edges.size());
        index.emplace(key, id);
        out.edges.push_back({std::min(i, j), std::max(i, j)});
        out.cot_weight.push_back(0.0);
      }
      else
      {
        id = it->second;
      }
      out.cot_weight[id] += 0.5 * cot;
    }
  }
  return out;
}

std::vector<double> LumpedMass(const Mesh2D &mesh)
{
  std::vector<double> m(mesh.NumNodes(), 0.0);
  for (int c = 0; c < mesh.NumCells(); c++)
  {
    const auto &tri = mesh.cells[c];
    const double area = mesh.CellArea(c);
    int obtuse = -1;
    std::array<double, 3> cot{};
    for (int k = 0; k < 3; k++)
    {
      const Eigen::Vector2d &p = mesh.nodes[tri[k]];
      const Eigen::Vector2d u = mesh.nodes[tri[(k + 1) % 3]] - p;
      const Eigen::Vector2d v = mesh.nodes[tri[(k + 2) % 3]] - p;
      const double dot = u.dot(v);
      cot[k] = dot / std::abs(Cross(u, v));
      if (dot < 0.0)
      {
        obtuse = k;
      }
    }
    if (obtuse >= 0)
    {
      for (int k = 0; k < 3; k++)
      {
        m[tri[k]] += k == obtuse ? 0.5 * area : 0.25 * area;
      }
      continue;
    }
    // Voronoi share: edge ij contributes |e_ij|^2 cot(angle at k) / 8 to i and j.
    for (int k = 0; k < 3; k++)
    {
      const int i = tri[(k + 1) % 3], j = tri[(k + 2) % 3];
      const double share = (mesh.nodes[i] - mesh.nodes[j]).squaredNorm() * cot[k] / 8.0;
      m[i] += share;
      m[j] += share;
    }
  }
  return m;
}

void ValidateMesh(const Mesh2D &mesh, double min_angle_degrees)
{
  for (int c = 0; c < mesh.NumCells(); c++)
  {
    if (!(mesh.CellArea(c) > 0.0))
    {
      throw ValidationError("mesh cell " + std::to_string(c) + " is not positively oriented");
    }
  }
  std::map<std::uint64_t, int> count;
  for (const auto &tri : mesh.cells)
  {
    for (int k = 0; k < 3; k++)
    {
      count[EdgeKey(tri[k], tri[(k + 1) % 3])]++;
    }
  }
  std::set<std::uint64_t> topo, tagged;
  for (const auto &[key, n] : count)
  {
    if (n == 1)
    {
      topo.insert(key);
    }
    else if (n != 2)
    {
      throw ValidationError("mesh edge shared by more than two cells");
    }
  }
  for (const auto &e : mesh.boundary)
  {
    if (!tagged.insert(EdgeKey(e.a, e.b)).second)
    {
      throw ValidationError("boundary edge tagged more than once");
    }
  }
  if (topo != tagged)
  {
    throw ValidationError("tagged edges do not partition the mesh boundary");
  }
  const double angle = mesh.MinAngleDegrees();
  if (angle < min_angle_degrees)
  {
    std::ostringstream os;
    os << "mesh quality failure: minimum angle " << angle << " < " << min_angle_degrees;
    throw ValidationError(os.str());
  }
}

int MakeDelaunay(Mesh2D &mesh)
{
  int total = 0;
  for (int pass = 0; pass < 200; pass++)
  {
    // edge -> (cell, local index of the opposite vertex), at most two entries
    std::unordered_map<std::uint64_t, std::array<int, 4>> adj;
    adj.reserve(3 * mesh.cells.size());
    for (int c = 0; c < mesh.NumCells(); c++)
    {
      for (int k = 0; k < 3; k++)
      {
        const auto &tri = mesh.cells[c];
        const std::uint64_t key = EdgeKey(tri[(k + 1) % 3], tri[(k + 2) % 3]);
        auto it = adj.find(key);
        if (it == adj.end())
        {
          adj.emplace(key, std::array<int, 4>{c, k, -1, -1});
        }
        else
        {
          it->second[2] = c;
          it->second[3] = k;
        }
      }
    }
    std::vector<char> touched(mesh.cells.size(), 0);
    int flips = 0;
    // Visit edges in cell order for a deterministic result.
    for (int c = 0; c < mesh.NumCells(); c++)
    {
      for (int k = 0; k < 3; k++)
      {
        if (touched[c])
        {
          break;
        }
        const auto tri = mesh.cells[c];
        const int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3], x = tri[k];
        const auto &entry = adj.at(EdgeKey(a, b));
        if (entry[2] < 0)
        {
          continue;
        }
        const int c2 = entry[0] == c ? entry[2] : entry[0];
        const int k2 = entry[0] == c ? entry[3] : entry[1];
        if (c2 < c || touched[c2])
        {
          continue;
        }
        const int y = mesh.cells[c2][k2];
        const double sum = AngleAt(mesh.nodes[x], mesh.nodes[a], mesh.nodes[b]) +
                           AngleAt(mesh.nodes[y], mesh.nodes[a], mesh.nodes[b]);
        if (sum > std::numbers::pi + 1e-10)
        {
          // (a, b, x) and (b, a, y) become (a, y, x) and (y, b, x).
          mesh.cells[c] = {a, y, x};
          mesh.cells[c2] = {y, b, x};
          touched[c] = touched[c2] = 1;
          flips++;
        }
      }
    }
    total += flips;
    if (flips == 0)
    {
      return total;
    }
  }
  throw SolverError("Delaunay flipping did not terminate");
}

Mesh2D ZipperMesh(const ZipperRegion &region)
{
  if (!(region.h > 0.0 && region.ell > 0.0))
  {
    throw ValidationError("zipper region needs positive h and ell");
  }
  const int J = std::max(1, static_cast<int>(std::lround(region.ell / region.h)));
  const double ht = region.ell / J;
  if (region.right - std::max(0.0, region.left_slope * region.ell) < region.h &&
      region.right - region.left_slope * region.ell < region.h)
  {
    throw ValidationError("zipper region too narrow for the requested spacing");
  }
  Mesh2D mesh;
  mesh.h = region.h;
  std::vector<std::vector<int>> rows(J + 1);
  for (int j = 0; j <= J; j++)
  {
    const double t = j * ht;
    const double left = region.left_slope * t;
    std::vector<double> s_values;
    for (int i = 0;; i++)
    {
      const double s = region.right - i * region.h;
      if (!(s > left + region.gap_fraction * region.h))
      {
        break;
      }
      s_values.push_back(s);
    }
    s_values.push_back(left);
    std::reverse(s_values.begin(), s_values.end());
    for (std::size_t k = 0; k < s_values.size(); k++)
    {
      rows[j].push_back(mesh.NumNodes());
      mesh.nodes.emplace_back(s_values[k], t);
      mesh.s.push_back(s_values[k]);
      mesh.t.push_back(t);
      mesh.arm.push_back(k == 0 ? 0 : 1);
    }
  }
  for (int j = 0; j < J; j++)
  {
    const auto &A = rows[j];
    const auto &B = rows[j + 1];
    std::size_t i = 0, k = 0;
    while (i + 1 < A.size() || k + 1 < B.size())
    {
      bool advance_a;
      if (i + 1 >= A.size())
      {
        advance_a = false;
      }
      else if (k + 1 >= B.size())
      {
        advance_a = true;
      }
      else
      {
        advance_a = mesh.s[A[i + 1]] <= mesh.s[B[k + 1]];
      }
      if (advance_a)
      {
        mesh.cells.push_back({A[i], A[i + 1], B[k]});
        i++;
      }
      else
      {
        mesh.cells.push_back({A[i], B[k + 1], B[k]});
        k++;
      }
    }
  }
  for (std::size_t i = 0; i + 1 < rows[0].size(); i++)
  {
    mesh.boundary.push_back({rows[0][i], rows[0][i + 1], BoundaryTag::OUTER});
  }
  for (std::size_t i = 0; i + 1 < rows[J].size(); i++)
  {
    mesh.boundary.push_back({rows[J][i], rows[J][i + 1], BoundaryTag::INNER});
  }
  for (int j = 0; j < J; j++)
  {
    mesh.boundary.push_back({rows[j].back(), rows[j + 1].back(), BoundaryTag::SIDE_PLUS});
    mesh.boundary.push_back({rows[j].front(), rows[j + 1].front(), BoundaryTag::SIDE_MINUS});
  }
  return mesh;
}

Mesh2D BuildStripMesh(double L, double ell, double h, double min_angle_degrees)
{
  if (!(L > 0.0 && ell > 0.0 && h > 0.0))
  {
    throw ValidationError("strip needs positive L, ell, h");
  }
  ZipperRegion region;
  region.left_slope = 0.0;
  region.right = L;
  region.ell = ell;
  region.h = h;
  Mesh2D mesh = ZipperMesh(region);
  std::fill(mesh.arm.begin(), mesh.arm.end(), 1);
  MakeDelaunay(mesh);
  ValidateMesh(mesh, min_angle_degrees);
  return mesh;
}

void WriteMeshCsv(const Mesh2D &mesh, const std::string &prefix)
{
  std::ofstream nodes(prefix + "_nodes.csv"), cells(prefix + "_cells.csv"),
      bnd(prefix + "_boundary.csv");
  if (!nodes || !cells || !bnd)
  {
    throw ValidationError("cannot write mesh files with prefix " + prefix);
  }
  nodes.precision(17);
  nodes << "id,x,y,s,t,arm\n";
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    nodes << i << ',' << mesh.nodes[i].x() << ',' << mesh.nodes[i].y() << ',' << mesh.s[i]
          << ',' << mesh.t[i] << ',' << mesh.arm[i] << '\n';
  }
  cells << "id,n0,n1,n2\n";
  for (int c = 0; c < mesh.NumCells(); c++)
  {
    cells << c << ',' << mesh.cells[c][0] << ',' << mesh.cells[c][1] << ',' << mesh.cells[c][2]
          << '\n';
  }
  bnd << "a,b,tag\n";
  for (const auto &e : mesh.boundary)
  {
    bnd << e.a << ',' << e.b << ',' << TagName(e.tag) << '\n';
  }
}

Mesh2D ReadMeshCsv(const std::string &prefix)
{
  auto open = [](const std::string &path) {
    std::ifstream in(path);
    if (!in)
    {
      throw ValidationError("cannot read " + path);
    }
    std::string header;
    std::getline(in, header);
    return in;
  };
  Mesh2D mesh;
  {
    std::ifstream in = open(prefix + "_nodes.csv");
    std::string line;
    while (std::getline(in, line))
    {
      if (line.empty())
      {
        continue;
      }
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream is(line);
      int id, arm;
      double x, y, s, t;
      is >> id >> x >> y >> s >> t >> arm;
      mesh.nodes.emplace_back(x, y);
      mesh.s.push_back(s);
      mesh.t.push_back(t);
      mesh.arm.push_back(arm);
    }
  }
  {
    std::ifstream in = open(prefix + "_cells.csv");
    std::string line;
    while (std::getline(in, line))
    {
      if (line.empty())
      {
        continue;
      }
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream is(line);
      int id, a, b, c;
      is >> id >> a >> b >> c;
      mesh.cells.push_back({a, b, c});
    }
  }
  {
    std::ifstream in = open(prefix + "_boundary.csv");
    std::string line;
    while (std::getline(in, line))
    {
      if (line.empty())
      {
        continue;
      }
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream is(line);
      int a, b;
      std::string tag;
      is >> a >> b >> tag;
      BoundaryTag t = BoundaryTag::OUTER;
      if (tag == "INNER")
      {
        t = BoundaryTag::INNER;
      }
      else if (tag == "SIDE_MINUS")
      {
        t = BoundaryTag::SIDE_MINUS;
      }
      else if (tag == "SIDE_PLUS")
      {
        t = BoundaryTag::SIDE_PLUS;
      }
      else if (tag != "OUTER")
      {
        throw ValidationError("unknown boundary tag " + tag);
      }
      mesh.boundary.push_back({a, b, t});
    }
  }
  double hmax = 0.0;
  for (const auto &e : mesh.boundary)
  {
    hmax = std::max(hmax, (mesh.nodes[e.a] - mesh.nodes[e.b]).norm());
  }
  mesh.h = hmax;
  return mesh;
}

}  // namespace glwedge
