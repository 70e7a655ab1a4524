#ifndef NLAB_CLI_HPP
#define NLAB_CLI_HPP

namespace nlab::cli {

// Entry point behind the command-line tool. Exit codes: 0 when every physics
// contract of the subcommand holds, 1 when a contract fails (the report names
// the failing check), 2 on usage errors.
int run(int argc, const char* const* argv);

}  // namespace nlab::cli

#endif
