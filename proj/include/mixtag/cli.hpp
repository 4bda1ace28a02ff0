#ifndef MIXTAG_CLI_HPP
#define MIXTAG_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace mixtag {

// Runs one subcommand. args excludes the program name. Returns the process
// exit code: 0 ok, 1 usage or config problem, 2 bad data or file format,
// 3 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace mixtag

#endif  // MIXTAG_CLI_HPP
