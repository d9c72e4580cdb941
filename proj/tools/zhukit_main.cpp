#include <iostream>
#include <string>
#include <vector>

#include "zhukit/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return zhukit::run_cli(args, std::cout, std::cerr);
}
