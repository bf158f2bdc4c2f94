#ifndef NAC_CLI_HPP
#define NAC_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace nac {

// Runs the nac command-line tool on the given arguments (program name
// excluded). Exit codes: 0 success, 1 usage error, 2 parse or validation
// error, 3 term budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nac

#endif
