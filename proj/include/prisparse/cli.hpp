#pragma once

#include <iosfwd>

namespace prisparse {

// Exit codes of the prisparse command.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,       // invalid solution, failed certification, other errors
  kExitUsage = 2,         // bad flags or unparsable input
  kExitStrategy = 3,      // strategy/family or solver/family rejected
  kExitDisconnected = 4,  // terminals cannot be connected
  kExitWeight = 5,        // declared weight differs from recomputed weight
  kExitInstance = 6,      // solution references another instance
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace prisparse
