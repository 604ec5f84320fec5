// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "glwedge/cli.hpp"

#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "glwedge/acceptance.hpp"
#include "glwedge/assembler.hpp"
#include "glwedge/corner.hpp"
#include "glwedge/io.hpp"
#include "glwedge/numerics.hpp"
#include "glwedge/profile1d.hpp"
#include "glwedge/strip.hpp"

namespace glwedge
{

namespace
{

struct GlobalConfig
{
  int threads = 1;
  std::string cache_dir = ".glwedge-cache";
  double tol = 1e-8;
  int max_iterations = 4000;
  double theta0 = 0.5901;

  void Validate() const
  {
    if (!(tol > 0.0))
    {
      throw ValidationError("tolerance must be positive");
    }
    if (threads < 1)
    {
      throw ValidationError("thread count must be at least 1");
    }
    if (max_iterations < 1)
    {
      throw ValidationError("iteration limit must be at least 1");
    }
  }

  MinimizeOptions Options() const
  {
    MinimizeOptions o;
    o.tol = tol;
    o.max_iterations = max_iterations;
    return o;
  }
};

struct ProfileArgs
{
  double b = 1.5, k = 0.0, eps = 0.0, ell = 12.0;
  int n = 2401;
  std::string potential = "continuum";
  std::string out = "profile.csv";
  std::string summary;
  bool no_cache = false;
};

struct StripArgs
{
  double b = 1.5, L = 4.0, ell = 10.0, h = 0.125, kappa = 0.0;
  std::string variant = "dirichlet";
  std::string out = "strip.json";
  std::string field;
};

struct CornerArgs
{
  double b = 1.5, beta = std::numbers::pi / 2.0, L = 8.0, ell = 6.0, h = 0.125;
  std::string schedule = "default";
  std::string variant = "dirichlet_star";
  std::string formulation = "F";
  std::string convention = "tangential";
  std::vector<double> ells{6.0, 8.0, 10.0};
  std::vector<double> hs{0.25, 0.125};
  bool adjust_integer = false;
  std::string out = "corner.json";
  std::string field;
};

struct ConjectureArgs
{
  double b = 1.5;
  std::vector<double> betas{0.79, 1.57, 2.36, 2.94, 3.34};
  std::string out = "conjecture.csv";
};

struct AssembleArgs
{
  std::string domain;
  double eps = 0.02, b = 1.5;
  std::string corners = "conjecture";
  std::string out = "expansion.json";
};

struct SelftestArgs
{
  bool quick = false;
  bool verbose = false;
  std::string out_dir;
  std::vector<int> only;
};

std::string Sidecar(const std::string &path, const std::string &suffix)
{
  std::filesystem::path p(path);
  p.replace_extension("");
  return p.string() + suffix;
}

Profile1D CachedProfile(const Params1D &p, const GlobalConfig &g, bool use_cache)
{
  const ProfileCache cache(use_cache ? ResolveCacheDir(g.cache_dir) : std::string());
  if (auto hit = cache.Load(p))
  {
    return *hit;
  }
  Profile1D prof = OptimizeAlpha(p);
  cache.Store(prof);
  return prof;
}

void WarnRegime(double b, double theta0, std::ostream &err)
{
  Params1D p;
  p.b = b;
  p.theta0 = theta0;
  if (p.OutsideSurfaceRegime())
  {
    err << "warning: b outside surface regime (1, 1/theta0)\n";
  }
}

double ECorr(double b, const GlobalConfig &g)
{
  Params1D p;
  p.b = b;
  p.ell = 12.0;
  p.n = 2401;
  p.theta0 = g.theta0;
  p.Validate();
  return SummaryRichardson(b, p.ell, p.n).e_corr_integral;
}

int RunProfile(const ProfileArgs &a, const GlobalConfig &g, std::ostream &out, std::ostream &err)
{
  Params1D p;
  p.b = a.b;
  p.k = a.k;
  p.eps = a.eps;
  p.ell = a.ell;
  p.n = a.n;
  p.theta0 = g.theta0;
  p.potential = a.potential == "lattice" ? Potential1D::LATTICE : Potential1D::CONTINUUM;
  p.Validate();
  if (p.OutsideSurfaceRegime())
  {
    err << "warning: b outside surface regime (1, 1/theta0)\n";
  }
  const Profile1D prof = CachedProfile(p, g, !a.no_cache);
  const CostTables tables = ComputeCostTables(prof);
  WriteProfileCsv(a.out, prof, tables);
  const Json summary = ProfileSummaryJson(prof, tables);
  WriteJsonFile(a.summary.empty() ? Sidecar(a.out, ".json") : a.summary, summary);
  out << summary.dump(2) << '\n';
  return kExitOk;
}

int RunStrip(const StripArgs &a, const GlobalConfig &g, std::ostream &out, std::ostream &err)
{
  WarnRegime(a.b, g.theta0, err);
  StripSpec spec;
  spec.b = a.b;
  spec.L = a.L;
  spec.ell = a.ell;
  spec.h = a.h;
  spec.options = g.Options();
  if (a.variant == "neumann")
  {
    spec.variant = StripVariant::NEUMANN_MODIFIED;
  }
  else if (a.variant == "dirichlet_phase")
  {
    spec.variant = StripVariant::DIRICHLET_PHASE;
    const double kappa = a.kappa;
    spec.kappa = [kappa](double) { return kappa; };
  }
  const StripResult res = SolveStrip(spec);
  const EnergySplit split =
      ReducedEnergySplit(res.psi, res.setup.mesh, res.setup.ref, spec.b, spec.L, res.energy);
  const FieldDiagnostics diag = ComputeFieldDiagnostics(res, 0.5 * spec.ell);
  const Json j = StripResultJson(res, split, diag, false);
  WriteJsonFile(a.out, j);
  WriteFieldCsv(res.psi, res.setup.mesh,
                a.field.empty() ? Sidecar(a.out, "_field.csv") : a.field);
  out << "energy " << res.energy << "  E/L " << res.e_per_length << "  E1D(lattice) "
      << res.setup.ref.energy() << "  iterations " << res.report.iterations << '\n';
  if (!res.report.converged)
  {
    err << "error: minimizer did not reach the gradient tolerance\n";
    return kExitSolver;
  }
  return kExitOk;
}

int RunCorner(const CornerArgs &a, const GlobalConfig &g, std::ostream &out, std::ostream &err)
{
  WarnRegime(a.b, g.theta0, err);
  if (a.schedule == "single")
  {
    CornerSpec spec;
    spec.beta = a.beta;
    spec.b = a.b;
    spec.L = a.L;
    spec.ell = a.ell;
    spec.h = a.h;
    spec.options = g.Options();
    spec.variant =
        a.variant == "neumann" ? CornerVariant::NEUMANN_MODIFIED : CornerVariant::DIRICHLET_STAR;
    spec.formulation = a.formulation == "a_beta" ? Formulation::A_BETA : Formulation::F_GAUGE;
    spec.convention =
        a.convention == "literal" ? PhaseConvention::LITERAL : PhaseConvention::TANGENTIAL;
    const CornerResult res = SolveCorner(spec);
    const WedgeGauge gauge = BuildWedgeGauge(res.geom, res.mesh);
    if (!gauge.warning.empty())
    {
      err << "warning: " << gauge.warning << '\n';
    }
    WriteJsonFile(a.out, CornerResultJson(res, gauge, false));
    WriteFieldCsv(res.psi, res.mesh, a.field.empty() ? Sidecar(a.out, "_field.csv") : a.field);
    out << "energy " << res.energy << "  e(L,ell) " << res.e_defect << "  iterations "
        << res.report.iterations << '\n';
    if (!res.report.converged)
    {
      err << "error: minimizer did not reach the gradient tolerance\n";
      return kExitSolver;
    }
    return kExitOk;
  }
  CornerSchedule schedule;
  schedule.ells = a.ells;
  schedule.hs = a.hs;
  schedule.adjust_integer = a.adjust_integer;
  const CornerEstimate est =
      CornerEnergyEstimate(a.beta, a.b, schedule, ECorr(a.b, g), g.Options());
  WriteJsonFile(a.out, CornerEstimateJson(est));
  for (const CornerRow &r : est.rows)
  {
    out << "L " << r.L << "  ell " << r.ell << "  h " << r.h << "  e " << r.e
        << (r.converged ? "" : "  (not converged)") << '\n';
  }
  out << "e_corner " << est.e_corner << "  conjecture " << est.conjecture << "  plateau "
      << (est.plateau ? "yes" : "no") << '\n';
  if (!est.plateau)
  {
    err << "warning: ell-plateau not reached (spread " << est.spread << ")\n";
  }
  return kExitOk;
}

int RunConjecture(const ConjectureArgs &a, const GlobalConfig &g, std::ostream &out,
                  std::ostream &err)
{
  WarnRegime(a.b, g.theta0, err);
  const ConjectureTable table =
      ConjectureCheck(a.b, a.betas, CornerSchedule{}, ECorr(a.b, g), g.Options());
  WriteConjectureCsv(a.out, table);
  WriteJsonFile(Sidecar(a.out, ".json"), ConjectureJson(table));
  out << "E_corr " << table.e_corr << '\n';
  for (const ConjectureRow &r : table.rows)
  {
    out << "beta " << r.beta << "  e_corner " << r.e_corner << "  conjecture " << r.conjecture
        << "  rel_dev " << r.rel_dev << '\n';
  }
  out << "sign agreement " << table.sign_agree << " of " << table.sign_checked << '\n';
  return kExitOk;
}

int RunAssemble(const AssembleArgs &a, const GlobalConfig &g, std::ostream &out,
                std::ostream &err)
{
  WarnRegime(a.b, g.theta0, err);
  const DomainSpec spec = DomainSpecFromJson(ReadJsonFile(a.domain));
  GaussBonnetResidual(spec);
  const HalfLineSummary summary = SummaryRichardson(a.b, 12.0, 2401);
  CornerEnergies energies;
  if (a.corners == "computed")
  {
    for (double beta : spec.corners)
    {
      if (energies.count(beta) == 0)
      {
        const CornerEstimate est = CornerEnergyEstimate(beta, a.b, CornerSchedule{},
                                                        summary.e_corr_integral, g.Options());
        energies[beta] = CornerValue{est.e_corner, false};
      }
    }
  }
  else
  {
    energies = ConjectureCornerEnergies(spec, summary.e_corr_integral);
  }
  const ExpansionReport rep = ExpandEnergy(spec, a.eps, summary, energies);
  const Json j = ExpansionReportJson(rep);
  WriteJsonFile(a.out, j);
  out << j.dump(2) << '\n';
  return kExitOk;
}

int RunSelftest(const SelftestArgs &a, std::ostream &out)
{
  SuiteOptions o;
  o.quick = a.quick;
  o.verbose = a.verbose;
  o.out_dir = a.out_dir;
  o.only = a.only;
  std::error_code ec;
  const auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec)
  {
    o.glwedge_exe = self.string();
  }
  return RunAcceptance(o, out).ok() ? kExitOk : kExitSolver;
}

}  // namespace

int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Ginzburg-Landau surface superconductivity solvers for wedge domains", "glwedge"};
  // Short -h would collide with the mesh spacing option --h.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "TOML configuration file; flags override its values");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalConfig g;
  app.add_option("--threads", g.threads, "Worker threads (solves run serially)");
  app.add_option("--cache-dir", g.cache_dir, "1D profile cache directory (GLWEDGE_CACHE wins)");
  app.add_option("--tol", g.tol, "2D gradient-norm tolerance");
  app.add_option("--max-iterations", g.max_iterations, "2D iteration limit");
  app.add_option("--theta0", g.theta0, "Theta0 for regime warnings");

  ProfileArgs pa;
  CLI::App *profile = app.add_subcommand("profile1d", "1D boundary profile and cost tables");
  profile->add_option("--b", pa.b, "Coupling b");
  profile->add_option("--k", pa.k, "Rescaled curvature");
  profile->add_option("--eps", pa.eps, "Curvature scale");
  profile->add_option("--ell", pa.ell, "Interval length");
  profile->add_option("--n", pa.n, "Grid points");
  profile->add_option("--potential", pa.potential, "continuum or lattice")
      ->check(CLI::IsMember({"continuum", "lattice"}));
  profile->add_option("--out", pa.out, "CSV output t,f,F,K");
  profile->add_option("--summary", pa.summary, "Summary JSON (default: next to --out)");
  profile->add_flag("--no-cache", pa.no_cache, "Bypass the profile cache");

  StripArgs sa;
  CLI::App *strip = app.add_subcommand("strip", "Finite strip problem");
  strip->add_option("--b", sa.b, "Coupling b");
  strip->add_option("--L", sa.L, "Strip length");
  strip->add_option("--ell", sa.ell, "Strip depth");
  strip->add_option("--h", sa.h, "Mesh spacing");
  strip->add_option("--variant", sa.variant, "dirichlet, neumann or dirichlet_phase")
      ->check(CLI::IsMember({"dirichlet", "neumann", "dirichlet_phase"}));
  strip->add_option("--kappa", sa.kappa, "Constant phase for dirichlet_phase");
  strip->add_option("--out", sa.out, "Result JSON");
  strip->add_option("--field", sa.field, "Field CSV (default: next to --out)");

  CornerArgs ca;
  CLI::App *corner = app.add_subcommand("corner", "Wedge corner energy");
  corner->add_option("--b", ca.b, "Coupling b");
  corner->add_option("--beta", ca.beta, "Opening angle");
  corner->add_option("--schedule", ca.schedule, "default (extrapolated sweep) or single")
      ->check(CLI::IsMember({"default", "single"}));
  corner->add_option("--L", ca.L, "Arm length (single)");
  corner->add_option("--ell", ca.ell, "Depth (single)");
  corner->add_option("--h", ca.h, "Mesh spacing (single)");
  corner->add_option("--variant", ca.variant, "dirichlet_star or neumann")
      ->check(CLI::IsMember({"dirichlet_star", "neumann"}));
  corner->add_option("--formulation", ca.formulation, "F or a_beta")
      ->check(CLI::IsMember({"F", "a_beta"}));
  corner->add_option("--convention", ca.convention, "tangential or literal")
      ->check(CLI::IsMember({"tangential", "literal"}));
  corner->add_option("--ells", ca.ells, "Depth schedule")->delimiter(',');
  corner->add_option("--hs", ca.hs, "Two mesh spacings")->delimiter(',');
  corner->add_flag("--adjust-integer", ca.adjust_integer, "Adjust L for the integer condition");
  corner->add_option("--out", ca.out, "Result JSON");
  corner->add_option("--field", ca.field, "Field CSV for single runs");

  ConjectureArgs ja;
  CLI::App *conjecture = app.add_subcommand("conjecture", "Corner energies against the conjecture");
  conjecture->add_option("--b", ja.b, "Coupling b");
  conjecture->add_option("--betas", ja.betas, "Opening angles")->delimiter(',');
  conjecture->add_option("--out", ja.out, "CSV beta,e_corner,conjecture,abs_dev,rel_dev");

  AssembleArgs aa;
  CLI::App *assemble = app.add_subcommand("assemble", "Three-term energy expansion for a domain");
  assemble->add_option("--domain", aa.domain, "Domain JSON")->required();
  assemble->add_option("--eps", aa.eps, "Scale eps");
  assemble->add_option("--b", aa.b, "Coupling b");
  assemble->add_option("--corners", aa.corners, "conjecture or computed")
      ->check(CLI::IsMember({"conjecture", "computed"}));
  assemble->add_option("--out", aa.out, "Report JSON");

  SelftestArgs ta;
  CLI::App *selftest = app.add_subcommand("selftest", "Acceptance suite");
  selftest->add_flag("--quick", ta.quick, "Skip criteria 6, 7 and 9");
  selftest->add_flag("--verbose", ta.verbose, "Print every clause");
  selftest->add_option("--out-dir", ta.out_dir, "Directory for per-criterion output files");
  selftest->add_option("--only", ta.only, "Criteria to run")->delimiter(',');

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    app.exit(e, out, err);
    return kExitOk;
  }
  catch (const CLI::CallForAllHelp &e)
  {
    app.exit(e, out, err);
    return kExitOk;
  }
  catch (const CLI::ValidationError &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  catch (const CLI::ConversionError &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  catch (const CLI::ParseError &e)
  {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try
  {
    g.Validate();
    if (profile->parsed())
    {
      return RunProfile(pa, g, out, err);
    }
    if (strip->parsed())
    {
      return RunStrip(sa, g, out, err);
    }
    if (corner->parsed())
    {
      return RunCorner(ca, g, out, err);
    }
    if (conjecture->parsed())
    {
      return RunConjecture(ja, g, out, err);
    }
    if (assemble->parsed())
    {
      return RunAssemble(aa, g, out, err);
    }
    return RunSelftest(ta, out);
  }
  catch (const ValidationError &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  catch (const SolverError &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  catch (const std::exception &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace glwedge
