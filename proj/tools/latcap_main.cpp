#include <iostream>
#include <string>
#include <vector>

#include "latcap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return latcap::cli::run(args, std::cout, std::cerr);
}
