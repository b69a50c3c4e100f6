#ifndef MORI_CLI_HPP
#define MORI_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mori {

// Exit codes: 0 success / FullSymmetric, 1 malformed input or failed
// validation, 2 conditional conclusion, 3 inconclusive.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in);

}  // namespace mori

#endif
