// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "glwedge/assembler.hpp"
#include "glwedge/corner.hpp"
#include "glwedge/profile1d.hpp"
#include "glwedge/strip.hpp"

namespace glwedge
{

using Json = nlohmann::ordered_json;

// Throws ValidationError when the file cannot be written.
void WriteTextFile(const std::string &path, const std::string &text);
void WriteJsonFile(const std::string &path, const Json &j);
Json ReadJsonFile(const std::string &path);

// t,f,F,K with 17 significant digits.
void WriteProfileCsv(const std::string &path, const Profile1D &prof, const CostTables &tables);

Json ProfileSummaryJson(const Profile1D &prof, const CostTables &tables);

Json Profile1DToJson(const Profile1D &prof);
Profile1D Profile1DFromJson(const Json &j);

Json MinimizeReportJson(const MinimizeReport &r, bool with_timing);
Json DecayJson(const DecayTable &d);

Json StripResultJson(const StripResult &res, const EnergySplit &split,
                     const FieldDiagnostics &diag, bool with_timing);
Json CornerResultJson(const CornerResult &res, const WedgeGauge &gauge, bool with_timing);
Json CornerEstimateJson(const CornerEstimate &est);
Json ConjectureJson(const ConjectureTable &table);

// beta,e_corner,conjecture,abs_dev,rel_dev
void WriteConjectureCsv(const std::string &path, const ConjectureTable &table);

// {arcs: [{length, curvature: {kind: "const", value} | {kind: "samples", values}}], corners}
DomainSpec DomainSpecFromJson(const Json &j);
Json ExpansionReportJson(const ExpansionReport &r);

// Write-once disk cache of 1D profiles keyed by a content hash of the
// parameters. Entries are written to a temporary name and renamed into place.
class ProfileCache
{
public:
  explicit ProfileCache(std::string dir);

  static std::string Key(const Params1D &p);
  std::optional<Profile1D> Load(const Params1D &p) const;
  void Store(const Profile1D &prof) const;
  const std::string &dir() const { return dir_; }

private:
  std::string Path(const Params1D &p) const;
  std::string dir_;
};

// GLWEDGE_CACHE when set, otherwise the configured directory.
std::string ResolveCacheDir(const std::string &configured);

}  // namespace glwedge
