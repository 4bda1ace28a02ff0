#include <iostream>
#include <vector>

#include "mixtag/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mixtag::run(args, std::cout, std::cerr);
}
