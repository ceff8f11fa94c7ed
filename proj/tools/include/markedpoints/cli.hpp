#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace markedpoints::cli {

/// Runs one command line (without the program name) and returns the exit
/// status: 0 success, 2 usage, 3 data validation, 4 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

} // namespace markedpoints::cli
