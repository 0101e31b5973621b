// Usable under the terms in the Apache License, Version 2.0.

#include <iostream>
#include <string>
#include <vector>

#include "sckf/lab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sckf::lab::cli_main(args, std::cout, std::cerr);
}
