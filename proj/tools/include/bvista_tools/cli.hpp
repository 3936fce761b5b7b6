#pragma once

#include <ostream>

namespace bvista::tools {

enum ExitCode : int { kExitOk = 0, kExitProcessing = 1, kExitUsage = 2 };

/// Entry point of the `bvista` command. Subcommands: score, bench,
/// fit-niqe, export-stats, curvature-dump. Returns 0 on success, 2 on a
/// usage error (help text on `err`), 1 on a processing error.
int cli_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bvista::tools
