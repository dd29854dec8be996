#include <iostream>
#include <string>
#include <vector>

#include "socf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return socf::cli::run(args, std::cout, std::cerr);
}
