// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "glwedge/acceptance.hpp"

int main(int argc, char **argv)
{
  CLI::App app{"glwedge acceptance criteria"};
  glwedge::SuiteOptions o;
  app.add_option("--glwedge", o.glwedge_exe, "glwedge executable for the determinism check");
  app.add_option("--out-dir", o.out_dir, "Directory for per-criterion output files");
  app.add_option("--only", o.only, "Criteria to run")->delimiter(',');
  app.add_flag("--quick", o.quick, "Skip criteria 6, 7 and 9");
  app.add_flag("--verbose", o.verbose, "Print every clause");
  CLI11_PARSE(app, argc, argv);
  return glwedge::RunAcceptance(o, std::cout).ok() ? 0 : 1;
}
