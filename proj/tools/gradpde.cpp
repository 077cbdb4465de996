#include <iostream>

#include "gradpde/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gradpde::dispatch(args, std::cout, std::cerr);
}
