#ifndef OFFDIAG_CLI_HPP
#define OFFDIAG_CLI_HPP

#include <string>
#include <vector>

namespace offdiag {

// Command-line entry point (argv without the program name).
// Exit codes: 0 pass, 2 bound violation, 1 usage or runtime error.
int cli_main(const std::vector<std::string>& args);

}  // namespace offdiag

#endif
