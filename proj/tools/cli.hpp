#pragma once

namespace fifosim {

/// Parses argv and runs one subcommand.  Exit codes: 0 success, 1 usage or
/// configuration error, 2 trace I/O or parse error, 3 verification failure.
int run_cli(int argc, char** argv);

}  // namespace fifosim
