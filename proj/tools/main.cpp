#include <iostream>
#include <string>
#include <vector>

#include "ualoc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ualoc::run(args, std::cout, std::cerr);
}
