#include <iostream>
#include <string>
#include <vector>

#include "flicker/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return flicker::cli::run(args, std::cout, std::cerr);
}
