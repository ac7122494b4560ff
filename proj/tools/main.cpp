#include <iostream>

#include "pkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  pkit::CommandResult r = pkit::run_command(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.status;
}
