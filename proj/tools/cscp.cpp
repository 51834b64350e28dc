#include <iostream>
#include <string>
#include <vector>

#include "cscp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cscp::cli::run(args, std::cout, std::cerr);
}
