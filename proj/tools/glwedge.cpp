// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "glwedge/cli.hpp"

int main(int argc, char **argv)
{
  return glwedge::RunCli(argc, argv, std::cout, std::cerr);
}
