#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace landis::cli {

constexpr int kPass = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;

/// Environment variable naming the output directory when --out is absent.
constexpr const char* kOutEnv = "LANDIS_OUT";

/// Parses argv, runs one subcommand and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace landis::cli
