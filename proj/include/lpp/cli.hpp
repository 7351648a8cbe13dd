#pragma once

#include <string>
#include <vector>

namespace lpp::cli {

// Parses args (args[0] is the program name), runs one subcommand, writes its
// output and returns the process exit code: 0 ok, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

// "a,b,c" or "start:stop:step" (inclusive)
std::vector<double> parse_grid(const std::string& s);

// flat key=value lines; '#' starts a comment
std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text);

std::string version();

}  // namespace lpp::cli
