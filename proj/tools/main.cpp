#include <iostream>
#include <vector>

#include "memforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return memforge::cli::run(args, std::cout, std::cerr);
}
