#include <iostream>
#include <string>
#include <vector>

#include "semife/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return semife::cli::run(args, std::cout, std::cerr);
}
