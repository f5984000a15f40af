#include <iostream>
#include <string>
#include <vector>

#include "adic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return adic::run(args, std::cout, std::cerr);
}
