// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "glwedge/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <unistd.h>

#include "glwedge/assembler.hpp"
#include "glwedge/corner.hpp"
#include "glwedge/numerics.hpp"
#include "glwedge/profile1d.hpp"
#include "glwedge/strip.hpp"

namespace glwedge
{

namespace
{

constexpr double kPi = std::numbers::pi;

class Timer
{
public:
  double Seconds() const
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// value <= limit; NaN fails.
void Le(CriterionResult &r, const std::string &name, double value, double limit)
{
  r.clauses.push_back({name, value, limit, value <= limit, false});
}

void Ge(CriterionResult &r, const std::string &name, double value, double limit)
{
  r.clauses.push_back({name, value, limit, value >= limit, false});
}

void Check(CriterionResult &r, const std::string &name, bool ok)
{
  r.clauses.push_back({name, ok ? 1.0 : 0.0, 1.0, ok, false});
}

std::string Fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string Tag(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string JoinPath(const std::string &dir, const std::string &name)
{
  return (std::filesystem::path(dir) / name).string();
}

Params1D Params(double b, double ell, int n)
{
  Params1D p;
  p.b = b;
  p.ell = ell;
  p.n = n;
  return p;
}

double ECorrAt(double b)
{
  return SummaryRichardson(b, 12.0, 2401).e_corr_integral;
}

void FinishTiming(CriterionResult &r, const Timer &timer)
{
  r.seconds = timer.Seconds();
  // Wall time is printed, never written, so output files stay deterministic.
  r.clauses.push_back({"wall time within budget", r.seconds, r.budget_seconds,
                       r.seconds <= r.budget_seconds, false});
}

}  // namespace

const char *StatusName(Status s)
{
  switch (s)
  {
    case Status::PASS:
      return "PASS";
    case Status::FAIL:
      return "FAIL";
    case Status::EXPECTED_FAIL:
      return "FAIL";
    case Status::SKIPPED:
      return "SKIP";
  }
  return "?";
}

Status CriterionResult::status() const
{
  if (skipped)
  {
    return Status::SKIPPED;
  }
  bool any_fail = false, all_unattainable = true;
  for (const Clause &c : clauses)
  {
    if (!c.pass)
    {
      any_fail = true;
      all_unattainable = all_unattainable && c.unattainable;
    }
  }
  if (!any_fail)
  {
    return Status::PASS;
  }
  return all_unattainable ? Status::EXPECTED_FAIL : Status::FAIL;
}

CriterionResult Criterion1(const std::string &)
{
  CriterionResult r;
  r.id = 1;
  r.title = "1D identity suite";
  r.budget_seconds = 5.0;
  const Timer timer;
  for (double b : {1.2, 1.5})
  {
    const std::string at = " (b=" + Tag(b) + ")";
    const Params1D p = Params(b, 12.0, 2401);
    const Profile1D prof = OptimizeAlpha(p);
    const std::vector<double> m = QuadratureWeights(p);
    double quartic = 0.0;
    for (int i = 0; i < p.n; i++)
    {
      quartic += m[i] * std::pow(prof.f[i], 4);
    }
    const double identity = std::abs(prof.energy + quartic / (2.0 * b));
    Le(r, "energy identity" + at, identity, 1e-6 * (1.0 + std::abs(prof.energy)));
    Le(r, "alpha stationarity" + at, std::abs(prof.stationarity), 1e-8);
    Le(r, "Neumann residual" + at, prof.neumann_residual, 1e-8);
    const HalfLineSummary s = SummaryRichardson(b, 12.0, 2401);
    Le(r, "E_corr closed vs integral after Richardson" + at,
       std::abs(s.e_corr_closed - s.e_corr_integral), 1e-5);
    Le(r, "E1D* negative" + at, s.e1d_star, -1e-300);
    r.report["b=" + Tag(b)] = {{"alpha", prof.alpha},
                               {"energy", prof.energy},
                               {"e1d_star", s.e1d_star},
                               {"alpha_star", s.alpha_star},
                               {"e_corr_integral", s.e_corr_integral},
                               {"e_corr_closed", s.e_corr_closed},
                               {"e_corr_closed_literal", s.e_corr_closed_literal}};
  }
  FinishTiming(r, timer);
  return r;
}

CriterionResult Criterion2(const std::string &out_dir)
{
  CriterionResult r;
  r.id = 2;
  r.title = "cost-function suite";
  r.budget_seconds = 5.0;
  const Timer timer;
  for (double b : {1.0, 1.5})
  {
    const std::string at = " (b=" + Tag(b) + ")";
    const Profile1D prof = OptimizeAlpha(Params(b, 12.0, 2401));
    const CostTables ct = ComputeCostTables(prof);
    const CostReport rep = CheckCostPositivity(ct, prof);
    Ge(r, "K convex" + at, rep.min_second_difference, -1e-8);
    r.report["b=" + Tag(b)] = {{"min_K_window", rep.min_K_window},
                               {"max_F", rep.max_F},
                               {"ell_bar", ct.ell_bar},
                               {"t_m", ct.t_m},
                               {"K_min", ct.K_min}};
    if (b != 1.5)
    {
      continue;
    }
    Le(r, "|F(0)|" + at, std::abs(ct.F.front()), 1e-8);
    Le(r, "|F(ell)|" + at, std::abs(ct.F_end_forward), 1e-8);
    Le(r, "max F" + at, rep.max_F, 1e-10);
    Ge(r, "min K on [0, ell_bar]" + at, rep.min_K_window, -1e-10);
    Le(r, "K_min negative" + at, ct.K_min, -1e-300);
    Check(r, "t_m in (ell_bar, ell]" + at, ct.t_m > ct.ell_bar && ct.t_m <= prof.params.ell);
    if (!out_dir.empty())
    {
      WriteProfileCsv(JoinPath(out_dir, "profile_b1.5.csv"), prof, ct);
    }
  }
  FinishTiming(r, timer);
  return r;
}

CriterionResult Criterion3(const std::string &)
{
  CriterionResult r;
  r.id = 3;
  r.title = "gradient oracles";
  r.budget_seconds = 30.0;
  const Timer timer;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  const Params1D p = Params(1.5, 12.0, 401);
  const Profile1D prof = OptimizeAlpha(p);
  std::vector<double> f = prof.f;
  for (double &v : f)
  {
    v += 0.1 * unit(rng);
  }
  const std::vector<double> g1 = Gradient1D(f, prof.alpha, p);
  double worst1 = 0.0;
  for (int k = 0; k < 20; k++)
  {
    std::vector<double> d(p.n), fp = f, fm = f;
    double gd = 0.0;
    for (int i = 0; i < p.n; i++)
    {
      d[i] = unit(rng);
      gd += g1[i] * d[i];
    }
    const double eta = 1e-5;
    for (int i = 0; i < p.n; i++)
    {
      fp[i] += eta * d[i];
      fm[i] -= eta * d[i];
    }
    const double fd = (Energy1D(fp, prof.alpha, p) - Energy1D(fm, prof.alpha, p)) / (2.0 * eta);
    worst1 = std::max(worst1, std::abs(fd - gd) / std::abs(gd));
  }
  Le(r, "1D worst relative error over 20 directions", worst1, 1e-6);

  // 12 x 8 squares with every energy term active and no fixed nodes.
  const Mesh2D mesh = BuildStripMesh(3.0, 2.0, 0.25);
  PotentialField pot;
  pot.kind = PotentialKind::F_HALF_PERP;
  pot.gauge_phase.resize(mesh.NumNodes());
  for (double &v : pot.gauge_phase)
  {
    v = unit(rng);
  }
  BoundarySpec bc;
  bc.current_term = true;
  bc.weight = [](double t) { return -0.5 + 0.3 * t; };
  const DiscreteProblem problem(mesh, pot, 1.5, bc);
  ComplexField psi(mesh.NumNodes());
  for (Complex &z : psi)
  {
    z = Complex(unit(rng), unit(rng));
  }
  const ComplexField g2 = problem.Gradient(psi);
  double worst2 = 0.0;
  for (int k = 0; k < 20; k++)
  {
    ComplexField d(mesh.NumNodes()), pp = psi, pm = psi;
    double gd = 0.0;
    const double eta = 1e-5;
    for (int i = 0; i < mesh.NumNodes(); i++)
    {
      d[i] = Complex(unit(rng), unit(rng));
      gd += g2[i].real() * d[i].real() + g2[i].imag() * d[i].imag();
      pp[i] += eta * d[i];
      pm[i] -= eta * d[i];
    }
    const double fd = (problem.Energy(pp) - problem.Energy(pm)) / (2.0 * eta);
    worst2 = std::max(worst2, std::abs(fd - gd) / std::abs(gd));
  }
  Le(r, "2D worst relative error over 20 directions", worst2, 1e-6);
  r.report = {{"worst_1d", worst1}, {"worst_2d", worst2}, {"nodes_2d", mesh.NumNodes()}};
  FinishTiming(r, timer);
  return r;
}

CriterionResult Criterion4(const std::string &out_dir)
{
  CriterionResult r;
  r.id = 4;
  r.title = "strip convergence";
  r.budget_seconds = 180.0;
  const Timer timer;
  const double b = 1.5, L = 4.0, ell = 10.0;
  std::vector<double> e_dirichlet;
  Json rows = Json::array();
  for (double h : {0.25, 0.125})
  {
    const std::string at = " (h=" + Tag(h) + ")";
    StripSpec spec;
    spec.b = b;
    spec.L = L;
    spec.ell = ell;
    spec.h = h;
    const StripResult dir = SolveStrip(spec);
    spec.variant = StripVariant::NEUMANN_MODIFIED;
    const StripResult neu = SolveStrip(spec);
    spec.variant = StripVariant::DIRICHLET_PHASE;
    spec.kappa = [](double) { return 0.7; };
    const StripResult phase = SolveStrip(spec);
    e_dirichlet.push_back(dir.e_per_length);
    const double slack = 20.0 * h * h;
    Check(r, "minimizers converged" + at,
          dir.report.converged && neu.report.converged && phase.report.converged);
    Le(r, "E_N - E_D" + at, neu.energy - dir.energy, slack);
    Le(r, "|E_phase - E_D|, constant kappa" + at, std::abs(phase.energy - dir.energy), 1e-10);
    for (const StripResult *res : {&dir, &neu})
    {
      const std::string which = std::string(" ") + VariantName(res->spec.variant) + at;
      const EnergySplit split = ReducedEnergySplit(res->psi, res->setup.mesh, res->setup.ref, b,
                                                   L, res->energy);
      Le(r, "splitting mismatch" + which, std::abs(split.mismatch), slack);
      Ge(r, "E0[u]" + which, split.reduced, -slack);
      Ge(r, "Agmon rate" + which, res->decay.rate, 0.2);
      const FieldDiagnostics diag = ComputeFieldDiagnostics(*res, 0.5 * ell);
      rows.push_back(StripResultJson(*res, split, diag, false));
    }
    if (!out_dir.empty() && h == 0.125)
    {
      WriteFieldCsv(neu.psi, neu.setup.mesh, JoinPath(out_dir, "strip_neumann_field.csv"));
    }
  }
  const double e_limit = Richardson2(e_dirichlet[0], e_dirichlet[1]);
  const double e1d = MakeReferenceProfile(b, ell, 0.005, Potential1D::CONTINUUM).energy();
  Le(r, "|E_D/L - E1D(ell)| after Richardson", std::abs(e_limit - e1d), 1e-3);
  r.report = {{"e_dirichlet_richardson", e_limit}, {"e1d_continuum", e1d}, {"runs", rows}};
  FinishTiming(r, timer);
  return r;
}

CriterionResult Criterion5(const std::string &out_dir)
{
  CriterionResult r;
  r.id = 5;
  r.title = "flat-angle reduction";
  r.budget_seconds = 180.0;
  const Timer timer;
  std::vector<double> es;
  Json rows = Json::array();
  for (double h : {0.25, 0.125})
  {
    CornerSpec spec;
    spec.beta = kPi;
    spec.L = 6.0;
    spec.ell = 8.0;
    spec.h = h;
    const CornerResult res = SolveCorner(spec);
    Check(r, "minimizer converged (h=" + Tag(h) + ")", res.report.converged);
    es.push_back(res.e_defect);
    rows.push_back({{"h", h}, {"energy", res.energy}, {"e", res.e_defect}});
    if (!out_dir.empty() && h == 0.125)
    {
      WriteFieldCsv(res.psi, res.mesh, JoinPath(out_dir, "corner_flat_field.csv"));
    }
  }
  const double e = Richardson2(es[0], es[1]);
  Le(r, "|e(6,8)| after Richardson", std::abs(e), 5e-3);
  r.report = {{"e_richardson", e}, {"runs", rows}};
  FinishTiming(r, timer);
  return r;
}

CriterionResult Criterion6(const std::string &)
{
  CriterionResult r;
  r.id = 6;
  r.title = "wedge structure suite";
  r.budget_seconds = 900.0;
  const Timer timer;
  const double beta = 0.5 * kPi, b = 1.5, h = 0.125, slack = 20.0 * h * h;
  Json sweep = Json::array();
  double previous = 0.0, max_abs = 0.0;
  bool decay_ok = true;
  for (double L : {8.0, 10.0, 12.0})
  {
    CornerSpec spec;
    spec.beta = beta;
    spec.b = b;
    spec.L = L;
    spec.ell = 6.0;
    spec.h = h;
    const CornerResult res = SolveCorner(spec);
    Check(r, "minimizer converged (L=" + Tag(L) + ")", res.report.converged);
    if (L > 8.0)
    {
      Le(r, "e(" + Tag(L) + ",6) - e(" + Tag(L - 2.0) + ",6)", res.e_defect - previous, slack);
    }
    previous = res.e_defect;
    max_abs = std::max(max_abs, std::abs(res.e_defect));
    decay_ok = decay_ok && res.decay.ok && !res.decay.trivial;
    sweep.push_back({{"L", L}, {"ell", 6.0}, {"e", res.e_defect}, {"decay_rate", res.decay.rate}});
  }
  Le(r, "max |e| over the sweep", max_abs, 10.0);
  Check(r, "Agmon decay over the sweep", decay_ok);

  const GapResult g1 = DirichletNeumannGap(beta, b, 8.0, 6.0, h);
  const GapResult g2 = DirichletNeumannGap(beta, b, 10.0, 8.0, h);
  Ge(r, "Dirichlet-Neumann gap (8,6)", g1.gap, -slack);
  Ge(r, "Dirichlet-Neumann gap (10,8)", g2.gap, -slack);
  Le(r, "gap(10,8) - gap(8,6)", g2.gap - g1.gap, 1e-3);

  CornerSpec spec;
  spec.beta = beta;
  spec.b = b;
  spec.L = 8.0;
  spec.ell = 6.0;
  spec.h = h;
  const CornerResult f_gauge = SolveCorner(spec);
  spec.formulation = Formulation::A_BETA;
  const CornerResult a_beta = SolveCorner(spec);
  const WedgeGauge gauge = BuildWedgeGauge(a_beta.geom, a_beta.mesh);
  Le(r, "|E(F, psi_star) - E(a_beta, psi_0)|", std::abs(f_gauge.energy - a_beta.energy),
     50.0 * h * spec.ell);
  Le(r, "sup |a_beta| in the strip", gauge.sup_a_beta, gauge.bound);
  // The ratio is below ell / (4 pi) < 1 for ell < 4 pi, so no L can make it an
  // integer; the search is still attempted and its failure recorded.
  Clause integer{"integer condition attainable at ell=6", gauge.integer_ratio, 1.0, false, true};
  try
  {
    const double L_int = AdjustForIntegerCondition(beta, spec.L, spec.ell);
    integer.pass = true;
    integer.value = L_int;
  }
  catch (const SolverError &)
  {
    integer.pass = false;
  }
  r.clauses.push_back(integer);
  r.report = {{"sweep", sweep},
              {"gap_8_6", g1.gap},
              {"gap_10_8", g2.gap},
              {"energy_F", f_gauge.energy},
              {"energy_a_beta", a_beta.energy},
              {"integer_ratio", gauge.integer_ratio},
              {"gauge_warning", gauge.warning}};
  FinishTiming(r, timer);
  return r;
}

CriterionResult Criterion7(const std::string &out_dir)
{
  CriterionResult r;
  r.id = 7;
  r.title = "near-pi conjecture anchor";
  r.budget_seconds = 1200.0;
  const Timer timer;
  const double b = 1.5;
  const double e_corr = ECorrAt(b);
  const CornerSchedule schedule;
  Json estimates = Json::array();
  for (double delta : {-0.2, 0.2})
  {
    const CornerEstimate est = CornerEnergyEstimate(kPi + delta, b, schedule, e_corr);
    const double tol = std::max(0.3 * std::abs(est.conjecture), 2.0 * std::pow(0.2, 4.0 / 3.0));
    Le(r, "|e_corner - conjecture| at beta=pi" + std::string(delta < 0 ? "-" : "+") + "0.2",
       std::abs(est.e_corner - est.conjecture), tol);
    estimates.push_back(CornerEstimateJson(est));
  }
  // Reported only: the full-range conjecture is not asserted.
  const CornerEstimate right = CornerEnergyEstimate(0.5 * kPi, b, schedule, e_corr);
  r.report = {{"e_corr", e_corr},
              {"estimates", estimates},
              {"right_angle",
               {{"e_corner", right.e_corner},
                {"conjecture", right.conjecture},
                {"abs_dev", std::abs(right.e_corner - right.conjecture)},
                {"plateau", right.plateau}}}};
  if (!out_dir.empty())
  {
    WriteJsonFile(JoinPath(out_dir, "corner_right_angle.json"), CornerEstimateJson(right));
  }
  FinishTiming(r, timer);
  return r;
}

CriterionResult Criterion8(const std::string &)
{
  CriterionResult r;
  r.id = 8;
  r.title = "assembler suite";
  r.budget_seconds = 1.0;
  const Timer timer;
  Le(r, "Gauss-Bonnet residual, unit square", GaussBonnetResidual(SquareDomain(1.0)), 1e-10);
  Le(r, "Gauss-Bonnet residual, unit disk", GaussBonnetResidual(DiskDomain(1.0)), 1e-10);
  Le(r, "Gauss-Bonnet residual, half-disk", GaussBonnetResidual(HalfDiskDomain(1.0)), 1e-10);
  DomainSpec sampled;
  sampled.arcs.resize(1);
  sampled.arcs[0].length = 2.0 * kPi;
  sampled.arcs[0].curvature.kind = Curvature::Kind::SAMPLES;
  sampled.arcs[0].curvature.samples.assign(101, 1.0);
  Le(r, "Gauss-Bonnet residual, sampled disk", GaussBonnetResidual(sampled), 1e-10);

  // An L-shaped hexagon has one reentrant corner.
  DomainSpec l_shape;
  for (double len : {2.0, 1.0, 1.0, 1.0, 1.0, 2.0})
  {
    Arc a;
    a.length = len;
    l_shape.arcs.push_back(a);
  }
  l_shape.corners = {0.5 * kPi, 0.5 * kPi, 1.5 * kPi, 0.5 * kPi, 0.5 * kPi, 0.5 * kPi};

  const HalfLineSummary summary = SummaryRichardson(1.5, 12.0, 601);
  double worst = 0.0;
  for (const DomainSpec &d : {SquareDomain(1.0), DiskDomain(1.0), HalfDiskDomain(1.0), l_shape})
  {
    const ExpansionReport rep =
        ExpandEnergy(d, 0.02, summary, ConjectureCornerEnergies(d, summary.e_corr_integral));
    worst = std::max(worst, std::abs(rep.order_one - rep.smooth_equivalent));
  }
  Le(r, "conjecture substitution, |O(1) + 2 pi E_corr|", worst, 1e-10);

  DomainSpec open = SquareDomain(1.0);
  open.corners[0] = kPi / 3.0;
  bool refused = false;
  try
  {
    ExpandEnergy(open, 0.02, summary, ConjectureCornerEnergies(open, summary.e_corr_integral));
  }
  catch (const ValidationError &)
  {
    refused = true;
  }
  Check(r, "expansion refuses a non-closing spec", refused);
  DomainSpec broken = SquareDomain(1.0);
  broken.corners.pop_back();
  bool chain_refused = false;
  try
  {
    GaussBonnetResidual(broken);
  }
  catch (const ValidationError &)
  {
    chain_refused = true;
  }
  Check(r, "open boundary chain rejected", chain_refused);
  r.report = {{"worst_identity_error", worst}};
  FinishTiming(r, timer);
  return r;
}

CriterionResult Criterion9(const std::string &glwedge_exe, const std::string &)
{
  CriterionResult r;
  r.id = 9;
  r.title = "determinism";
  r.budget_seconds = 600.0;
  const Timer timer;
  if (glwedge_exe.empty() || !std::filesystem::exists(glwedge_exe))
  {
    Check(r, "glwedge executable available", false);
    FinishTiming(r, timer);
    return r;
  }
  const auto base = std::filesystem::temp_directory_path() /
                    ("glwedge_determinism_" + std::to_string(::getpid()));
  std::filesystem::remove_all(base);
  bool runs_ok = true;
  std::vector<std::filesystem::path> dirs;
  for (const char *name : {"first", "second"})
  {
    const auto dir = base / name;
    dirs.push_back(dir);
    std::filesystem::create_directories(dir);
    const std::string cmd = "\"" + glwedge_exe + "\" selftest --quick --threads 1 --out-dir \"" +
                            dir.string() + "\" > \"" + (base / name).string() + ".log\" 2>&1";
    runs_ok = runs_ok && std::system(cmd.c_str()) == 0;
  }
  Check(r, "both quick runs exit 0", runs_ok);
  auto slurp = [](const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  std::vector<std::string> names;
  for (const auto &entry : std::filesystem::directory_iterator(dirs[0]))
  {
    names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  int identical = 0;
  for (const std::string &n : names)
  {
    if (std::filesystem::exists(dirs[1] / n) && slurp(dirs[0] / n) == slurp(dirs[1] / n))
    {
      identical++;
    }
  }
  int second_count = 0;
  for ([[maybe_unused]] const auto &entry : std::filesystem::directory_iterator(dirs[1]))
  {
    second_count++;
  }
  Ge(r, "output files compared", static_cast<double>(names.size()), 1.0);
  Check(r, "same file set", static_cast<int>(names.size()) == second_count);
  Le(r, "files differing", static_cast<double>(names.size()) - identical, 0.0);
  r.report = {{"files", names}};
  std::filesystem::remove_all(base);
  FinishTiming(r, timer);
  return r;
}

SuiteSummary RunAcceptance(const SuiteOptions &options, std::ostream &out)
{
  SuiteSummary summary;
  if (!options.out_dir.empty())
  {
    std::filesystem::create_directories(options.out_dir);
  }
  for (int id = 1; id <= 9; id++)
  {
    const bool selected = options.only.empty() ||
                          std::find(options.only.begin(), options.only.end(), id) !=
                              options.only.end();
    CriterionResult r;
    if (!selected || (options.quick && (id == 6 || id == 7 || id == 9)))
    {
      r.id = id;
      r.skipped = true;
    }
    else
    {
      const std::string &dir = options.out_dir;
      switch (id)
      {
        case 1: r = Criterion1(dir); break;
        case 2: r = Criterion2(dir); break;
        case 3: r = Criterion3(dir); break;
        case 4: r = Criterion4(dir); break;
        case 5: r = Criterion5(dir); break;
        case 6: r = Criterion6(dir); break;
        case 7: r = Criterion7(dir); break;
        case 8: r = Criterion8(dir); break;
        default: r = Criterion9(options.glwedge_exe, dir); break;
      }
    }
    const Status st = r.status();
    switch (st)
    {
      case Status::PASS: summary.passed++; break;
      case Status::FAIL: summary.failed++; break;
      case Status::EXPECTED_FAIL: summary.expected_failures++; break;
      case Status::SKIPPED: summary.skipped++; break;
    }
    std::ostringstream line;
    line << StatusName(st) << " criterion " << id;
    if (st == Status::SKIPPED)
    {
      line << ": skipped";
    }
    else
    {
      line << ": " << r.title << " (" << Fmt(r.seconds) << " s)";
      std::string sep = " failing: ";
      for (const Clause &c : r.clauses)
      {
        if (!c.pass)
        {
          line << sep << c.name << " = " << Fmt(c.value) << " vs " << Fmt(c.limit)
               << (c.unattainable ? " [unattainable precondition]" : "");
          sep = "; ";
        }
      }
    }
    out << line.str() << '\n';
    if (options.verbose)
    {
      for (const Clause &c : r.clauses)
      {
        out << "    " << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << Fmt(c.value)
            << " (limit " << Fmt(c.limit) << ")\n";
      }
    }
    out.flush();
    if (!options.out_dir.empty() && st != Status::SKIPPED)
    {
      Json clauses = Json::array();
      for (const Clause &c : r.clauses)
      {
        if (c.name == "wall time within budget")
        {
          continue;
        }
        clauses.push_back({{"name", c.name},
                           {"value", c.value},
                           {"limit", c.limit},
                           {"pass", c.pass},
                           {"unattainable", c.unattainable}});
      }
      WriteJsonFile(JoinPath(options.out_dir, "criterion_" + std::to_string(id) + ".json"),
                    Json{{"id", id}, {"title", r.title}, {"clauses", clauses}, {"report", r.report}});
    }
    summary.results.push_back(std::move(r));
  }
  out << "summary: " << summary.passed << " passed, " << summary.failed << " failed, "
      << summary.expected_failures << " failed on unattainable preconditions, " << summary.skipped
      << " skipped\n";
  return summary;
}

}  // namespace glwedge
