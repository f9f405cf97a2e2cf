#ifndef ORDIST_CLI_HPP
#define ORDIST_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ordist::cli {

/// Exit statuses shared by all subcommands.
enum Exit : int {
  kOk = 0,
  kNegative = 1,        // verify mismatch, falsify found nothing
  kBadInput = 2,        // unreadable or invalid input, bad flags
  kConstruction = 3,    // epsilon search exhausted
  kSelfCheck = 4,       // realize produced a config that fails verification
};

/// Runs `ordist <args...>`; reports go to `out`, single-line JSON diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordist::cli

#endif  // ORDIST_CLI_HPP
