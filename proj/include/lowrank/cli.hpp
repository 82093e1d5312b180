#pragma once

#include <iosfwd>

namespace lowrank {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
	kExitOk = 0,
	kExitIo = 1,
	kExitUsage = 2,
	kExitVerification = 3,
};

/// Entry point for the `lowrank` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lowrank
