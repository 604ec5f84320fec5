// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "glwedge/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "glwedge/numerics.hpp"

namespace glwedge
{

namespace
{

std::string Num(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char *PotentialName(Potential1D p)
{
  return p == Potential1D::LATTICE ? "lattice" : "continuum";
}

Json ParamsJson(const Params1D &p)
{
  return Json{{"b", p.b},         {"k", p.k},     {"eps", p.eps},
              {"ell", p.ell},     {"n", p.n},     {"theta0", p.theta0},
              {"potential", PotentialName(p.potential)}};
}

}  // namespace

void WriteTextFile(const std::string &path, const std::string &text)
{
  const std::filesystem::path p(path);
  if (p.has_parent_path())
  {
    std::filesystem::create_directories(p.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out)
  {
    throw ValidationError("cannot write " + path);
  }
}

void WriteJsonFile(const std::string &path, const Json &j)
{
  WriteTextFile(path, j.dump(2) + "\n");
}

Json ReadJsonFile(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ValidationError("cannot read " + path);
  }
  try
  {
    return Json::parse(in);
  }
  catch (const nlohmann::json::exception &e)
  {
    throw ValidationError(path + ": " + e.what());
  }
}

void WriteProfileCsv(const std::string &path, const Profile1D &prof, const CostTables &tables)
{
  std::ostringstream out;
  out << "t,f,F,K\n";
  for (std::size_t i = 0; i < prof.f.size(); i++)
  {
    out << Num(prof.params.t(static_cast<int>(i))) << ',' << Num(prof.f[i]) << ','
        << Num(tables.F[i]) << ',' << Num(tables.K[i]) << '\n';
  }
  WriteTextFile(path, out.str());
}

Json ProfileSummaryJson(const Profile1D &prof, const CostTables &tables)
{
  const Params1D &p = prof.params;
  const double f0 = prof.f.empty() ? 0.0 : prof.f.front();
  Json j{{"b", p.b},
         {"k", p.k},
         {"eps", p.eps},
         {"ell", p.ell},
         {"n", p.n},
         {"alpha", prof.alpha},
         {"energy", prof.energy},
         {"residual", prof.residual}};
  if (p.k == 0.0 || p.eps == 0.0)
  {
    j["e_corr_integral"] = ECorrIntegral(prof);
    j["e_corr_closed"] = f0 * f0 / 3.0 - prof.alpha * prof.energy;
  }
  else
  {
    j["e_corr_integral"] = nullptr;
    j["e_corr_closed"] = nullptr;
  }
  j["ell_bar"] = tables.ell_bar;
  j["t_m"] = tables.t_m;
  j["K_min"] = tables.K_min;
  j["neumann_residual"] = prof.neumann_residual;
  j["stationarity"] = prof.stationarity;
  j["degenerate"] = prof.degenerate;
  j["potential"] = PotentialName(p.potential);
  return j;
}

Json Profile1DToJson(const Profile1D &prof)
{
  return Json{{"params", ParamsJson(prof.params)},
              {"alpha", prof.alpha},
              {"energy", prof.energy},
              {"residual", prof.residual},
              {"neumann_residual", prof.neumann_residual},
              {"stationarity", prof.stationarity},
              {"linear_gap", prof.linear_gap},
              {"degenerate", prof.degenerate},
              {"newton_iterations", prof.newton_iterations},
              {"f", prof.f}};
}

Profile1D Profile1DFromJson(const Json &j)
{
  Profile1D prof;
  const Json &p = j.at("params");
  prof.params.b = p.at("b");
  prof.params.k = p.at("k");
  prof.params.eps = p.at("eps");
  prof.params.ell = p.at("ell");
  prof.params.n = p.at("n");
  prof.params.theta0 = p.at("theta0");
  prof.params.potential =
      p.at("potential") == "lattice" ? Potential1D::LATTICE : Potential1D::CONTINUUM;
  prof.alpha = j.at("alpha");
  prof.energy = j.at("energy");
  prof.residual = j.at("residual");
  prof.neumann_residual = j.at("neumann_residual");
  prof.stationarity = j.at("stationarity");
  prof.linear_gap = j.at("linear_gap");
  prof.degenerate = j.at("degenerate");
  prof.newton_iterations = j.at("newton_iterations");
  prof.f = j.at("f").get<std::vector<double>>();
  if (static_cast<int>(prof.f.size()) != prof.params.n)
  {
    throw ValidationError("cached profile has the wrong length");
  }
  return prof;
}

Json MinimizeReportJson(const MinimizeReport &r, bool with_timing)
{
  Json j{{"iterations", r.iterations},
         {"energy", r.energy},
         {"initial_energy", r.initial_energy},
         {"gradient_norm", r.gradient_norm},
         {"line_search_failures", r.line_search_failures},
         {"converged", r.converged}};
  if (with_timing)
  {
    j["wall_seconds"] = r.wall_seconds;
  }
  return j;
}

Json DecayJson(const DecayTable &d)
{
  return Json{{"rate", d.rate},          {"envelope", d.envelope}, {"trivial", d.trivial},
              {"ok", d.ok},              {"message", d.message},   {"distance", d.distance},
              {"max_abs", d.max_abs}};
}

Json StripResultJson(const StripResult &res, const EnergySplit &split,
                     const FieldDiagnostics &diag, bool with_timing)
{
  const StripSpec &s = res.spec;
  return Json{
      {"parameters",
       {{"b", s.b}, {"L", s.L}, {"ell", s.ell}, {"h", s.h}, {"variant", VariantName(s.variant)}}},
      {"mesh_hash", res.setup.mesh.Hash()},
      {"nodes", res.setup.mesh.NumNodes()},
      {"cells", res.setup.mesh.NumCells()},
      {"alpha0", res.setup.ref.alpha()},
      {"e1d_lattice", res.setup.ref.energy()},
      {"energy", res.energy},
      {"e_per_length", res.e_per_length},
      {"split",
       {{"bulk", split.bulk},
        {"reduced", split.reduced},
        {"mismatch", split.mismatch},
        {"excluded_cells", split.excluded_cells}}},
      {"diagnostics",
       {{"T", diag.T},
        {"ds_modulus_sq", diag.ds_modulus_sq},
        {"covariant_sq", diag.covariant_sq},
        {"ds_mass_at_L", diag.ds_mass_at_L},
        {"sup_deviation", diag.sup_deviation},
        {"winding", diag.winding},
        {"expected_winding", diag.expected_winding}}},
      {"minimizer", MinimizeReportJson(res.report, with_timing)},
      {"decay", DecayJson(res.decay)}};
}

Json CornerResultJson(const CornerResult &res, const WedgeGauge &gauge, bool with_timing)
{
  const CornerSpec &s = res.spec;
  return Json{{"parameters",
               {{"b", s.b},
                {"beta", s.beta},
                {"L", s.L},
                {"ell", s.ell},
                {"h", s.h},
                {"variant", CornerVariantName(s.variant)},
                {"formulation", s.formulation == Formulation::F_GAUGE ? "F" : "a_beta"},
                {"convention", ConventionName(s.convention)}}},
              {"mesh_hash", res.mesh.Hash()},
              {"nodes", res.mesh.NumNodes()},
              {"area", res.geom.Area()},
              {"perimeter", res.geom.Perimeter()},
              {"e1d_lattice", res.ref.energy()},
              {"energy", res.energy},
              {"e_defect", res.e_defect},
              {"gauge",
               {{"delta", gauge.delta},
                {"sup_a_beta", gauge.sup_a_beta},
                {"bound", gauge.bound},
                {"max_curl_deviation", gauge.max_curl_deviation},
                {"max_tangential_deviation", gauge.max_tangential_deviation},
                {"min_strip_layers", gauge.min_strip_layers},
                {"integer_ratio", gauge.integer_ratio},
                {"integer_condition", gauge.integer_condition},
                {"warning", gauge.warning}}},
              {"minimizer", MinimizeReportJson(res.report, with_timing)},
              {"decay", DecayJson(res.decay)}};
}

Json CornerEstimateJson(const CornerEstimate &est)
{
  Json rows = Json::array();
  for (const CornerRow &r : est.rows)
  {
    rows.push_back({{"L", r.L},
                    {"ell", r.ell},
                    {"h", r.h},
                    {"energy", r.energy},
                    {"e1d", r.e1d},
                    {"e", r.e},
                    {"converged", r.converged},
                    {"decay_rate", r.decay_rate}});
  }
  Json limits = Json::array();
  for (const CornerLimitRow &l : est.limits)
  {
    limits.push_back({{"L", l.L}, {"ell", l.ell}, {"e_extrapolated", l.e_extrapolated}});
  }
  return Json{{"beta", est.beta},           {"b", est.b},
              {"e_corner", est.e_corner},   {"plateau", est.plateau},
              {"spread", est.spread},       {"e_corr", est.e_corr},
              {"conjecture", est.conjecture}, {"rows", rows},
              {"limits", limits}};
}

Json ConjectureJson(const ConjectureTable &table)
{
  Json rows = Json::array();
  for (const ConjectureRow &r : table.rows)
  {
    rows.push_back({{"beta", r.beta},
                    {"e_corner", r.e_corner},
                    {"conjecture", r.conjecture},
                    {"abs_dev", r.abs_dev},
                    {"rel_dev", r.rel_dev},
                    {"plateau", r.plateau}});
  }
  return Json{{"b", table.b},
              {"e_corr", table.e_corr},
              {"sign_checked", table.sign_checked},
              {"sign_agree", table.sign_agree},
              {"rows", rows}};
}

void WriteConjectureCsv(const std::string &path, const ConjectureTable &table)
{
  std::ostringstream out;
  out << "beta,e_corner,conjecture,abs_dev,rel_dev\n";
  for (const ConjectureRow &r : table.rows)
  {
    out << Num(r.beta) << ',' << Num(r.e_corner) << ',' << Num(r.conjecture) << ','
        << Num(r.abs_dev) << ',' << Num(r.rel_dev) << '\n';
  }
  WriteTextFile(path, out.str());
}

DomainSpec DomainSpecFromJson(const Json &j)
{
  DomainSpec spec;
  try
  {
    for (const Json &a : j.at("arcs"))
    {
      Arc arc;
      arc.length = a.at("length");
      const Json &c = a.at("curvature");
      const std::string kind = c.at("kind");
      if (kind == "const")
      {
        arc.curvature.kind = Curvature::Kind::CONSTANT;
        arc.curvature.value = c.at("value");
      }
      else if (kind == "samples")
      {
        arc.curvature.kind = Curvature::Kind::SAMPLES;
        arc.curvature.samples = c.at("values").get<std::vector<double>>();
      }
      else
      {
        throw ValidationError("unknown curvature kind '" + kind + "'");
      }
      spec.arcs.push_back(arc);
    }
    if (j.contains("corners"))
    {
      spec.corners = j.at("corners").get<std::vector<double>>();
    }
  }
  catch (const nlohmann::json::exception &e)
  {
    throw ValidationError(std::string("malformed domain spec: ") + e.what());
  }
  return spec;
}

Json ExpansionReportJson(const ExpansionReport &r)
{
  Json corners = Json::array();
  for (const CornerTerm &c : r.corners)
  {
    corners.push_back(
        {{"beta", c.beta}, {"value", c.value}, {"source", c.from_conjecture ? "conjecture" : "computed"}});
  }
  return Json{{"eps", r.eps},
              {"b", r.b},
              {"e1d_star", r.e1d_star},
              {"e_corr", r.e_corr},
              {"perimeter", r.perimeter},
              {"total_curvature", r.total_curvature},
              {"gauss_bonnet_residual", r.gauss_bonnet_residual},
              {"leading", r.leading},
              {"curvature_term", r.curvature_term},
              {"corner_term", r.corner_term},
              {"order_one", r.order_one},
              {"total", r.total},
              {"smooth_equivalent", r.smooth_equivalent},
              {"corners", corners}};
}

ProfileCache::ProfileCache(std::string dir) : dir_(std::move(dir)) {}

std::string ProfileCache::Key(const Params1D &p)
{
  return HashHex(ParamsJson(p).dump());
}

std::string ProfileCache::Path(const Params1D &p) const
{
  return (std::filesystem::path(dir_) / ("profile1d_" + Key(p) + ".json")).string();
}

std::optional<Profile1D> ProfileCache::Load(const Params1D &p) const
{
  const std::string path = Path(p);
  if (dir_.empty() || !std::filesystem::exists(path))
  {
    return std::nullopt;
  }
  try
  {
    Profile1D prof = Profile1DFromJson(ReadJsonFile(path));
    if (ParamsJson(prof.params) != ParamsJson(p))
    {
      return std::nullopt;
    }
    return prof;
  }
  catch (const std::exception &)
  {
    return std::nullopt;
  }
}

void ProfileCache::Store(const Profile1D &prof) const
{
  if (dir_.empty())
  {
    return;
  }
  const std::string path = Path(prof.params);
  const std::string tmp = path + ".tmp";
  WriteTextFile(tmp, Profile1DToJson(prof).dump() + "\n");
  std::filesystem::rename(tmp, path);
}

std::string ResolveCacheDir(const std::string &configured)
{
  const char *env = std::getenv("GLWEDGE_CACHE");
  if (env != nullptr && *env != '\0')
  {
    return env;
  }
  return configured;
}

}  // namespace glwedge
