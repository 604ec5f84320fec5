// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "glwedge/mesh.hpp"

namespace glwedge
{

using Complex = std::complex<double>;
using ComplexField = std::vector<Complex>;

// Fixed magnetic potential with unit curl.
//   F_HALF_PERP:        A(x, y) = (-y, x) / 2
//   TANGENTIAL_MINUS_T: A(x, y) = (-y, 0), i.e. -t e_s on a strip
//   CUSTOM_NODAL:       nodal vectors, linear along each edge
// An optional nodal gauge phase phi adds grad phi, exactly on every edge.
enum class PotentialKind
{
  F_HALF_PERP,
  TANGENTIAL_MINUS_T,
  CUSTOM_NODAL
};

struct PotentialField
{
  PotentialKind kind = PotentialKind::F_HALF_PERP;
  std::vector<Eigen::Vector2d> nodal;
  std::vector<double> gauge_phase;

  // Line integral of A along the straight edge from node a to node b.
  double LinkPhase(const Mesh2D &mesh, int a, int b) const;
};

// Boundary conditions per tag. Dirichlet nodes are the endpoints of edges
// whose tag is Dirichlet; data(node) gives their value. The optional current
// term subtracts sum over SIDE edges of sigma * w(t) * J, with sigma = +1 on
// SIDE_PLUS, -1 on SIDE_MINUS, and J the gauge-covariant edge current in the
// +t direction.
struct BoundarySpec
{
  std::array<bool, 4> dirichlet{false, false, false, false};
  std::function<Complex(int node)> data;
  bool current_term = false;
  std::function<double(double t)> weight;
};

// Precomputed link-variable energy
//   sum_e kappa_e |psi_b - exp(-i theta_ab) psi_a|^2
//   + sum_i m_i (-|psi_i|^2 / b + |psi_i|^4 / (2 b))
//   - sum_side sigma w Im(conj(psi_a) exp(i theta_ab) psi_b).
class DiscreteProblem
{
 public:
  DiscreteProblem(const Mesh2D &mesh, const PotentialField &potential, double b,
                  const BoundarySpec &bc);

  double Energy(const ComplexField &psi) const;
  // Gradient with respect to (Re, Im) packed as a complex number; zero at
  // Dirichlet nodes.
  ComplexField Gradient(const ComplexField &psi) const;
  // sqrt(sum |g_i|^2 / m_i) over free nodes.
  double GradientNorm(const ComplexField &g) const;
  void ImposeDirichlet(ComplexField &psi) const;

  // Coefficients of E(psi + s d) - E(psi) as a polynomial c1 s + ... + c4 s^4.
  std::array<double, 5> LineCoefficients(const ComplexField &psi, const ComplexField &d) const;

  const Mesh2D &mesh() const { return *mesh_; }
  const std::vector<double> &mass() const { return mass_; }
  const std::vector<char> &fixed() const { return fixed_; }
  int NumFree() const { return num_free_; }
  double b() const { return b_; }

  struct Link
  {
    int a;
    int b;
    double kappa;
    Complex U;  // exp(-i theta_ab)
  };
  struct SideLink
  {
    int a;
    int b;
    double sigma_w;
    Complex V;  // exp(i theta_ab)
  };
  const std::vector<Link> &links() const { return links_; }
  const std::vector<SideLink> &side_links() const { return sides_; }

 private:
  const Mesh2D *mesh_;
  double b_;
  std::vector<Link> links_;
  std::vector<SideLink> sides_;
  std::vector<double> mass_;
  std::vector<char> fixed_;
  ComplexField data_;
  int num_free_ = 0;
};

double AssembleEnergy(const Mesh2D &mesh, const PotentialField &potential, double b,
                      const BoundarySpec &bc, const ComplexField &psi);
ComplexField AssembleGradient(const Mesh2D &mesh, const PotentialField &potential, double b,
                              const BoundarySpec &bc, const ComplexField &psi);

struct MinimizeOptions
{
  double tol = 1e-8;
  int max_iterations = 4000;
  int restart_every = 200;
};

struct MinimizeReport
{
  int iterations = 0;
  double energy = 0.0;
  double initial_energy = 0.0;
  double gradient_norm = 0.0;
  int line_search_failures = 0;
  double wall_seconds = 0.0;
  bool converged = false;
};

struct MinimizeResult
{
  ComplexField psi;
  double energy = 0.0;
  MinimizeReport report;
};

// Preconditioned Polak-Ribiere+ conjugate gradients with an exact line search
// on the quartic E(psi + s d). The preconditioner is the magnetic stiffness
// matrix plus the lumped mass on free nodes.
MinimizeResult Minimize(const DiscreteProblem &problem, ComplexField initial,
                        const MinimizeOptions &options = {});

struct DecayTable
{
  std::vector<double> distance;
  std::vector<double> max_abs;
  double rate = 0.0;
  double envelope = 0.0;
  bool trivial = false;
  bool ok = false;
  std::string message;
};

// Bins max |psi| by distance to the OUTER boundary (bin width 0.5) and fits
// log max |psi| linearly on [2, ell - 2]. ok requires rate >= min_rate.
DecayTable AgmonDecayProfile(const ComplexField &psi, const Mesh2D &mesh, double ell,
                             double min_rate = 0.2);

// Field dump: x,y,re,im,abs.
void WriteFieldCsv(const ComplexField &psi, const Mesh2D &mesh, const std::string &path);

}  // namespace glwedge
