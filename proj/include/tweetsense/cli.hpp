#ifndef TWEETSENSE_CLI_HPP
#define TWEETSENSE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tweetsense::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDataError = 2;
inline constexpr int kNumericError = 3;

// Runs one invocation (args excludes the program name). Subcommands write
// machine-readable files and a human summary on out.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(const std::vector<std::string>& args);

} // namespace tweetsense::cli

#endif
