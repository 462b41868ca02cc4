// The command-line front end as a library call, so tests can drive it in-process.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace detrep {

enum ExitCode {
  kExitOk = 0,
  kExitParse = 2,
  kExitSpec = 3,
  kExitObstruction = 4,
  kExitInconclusive = 5,
  kExitVerify = 6,
  kExitFixtures = 7,
};

// args excludes the program name
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace detrep
