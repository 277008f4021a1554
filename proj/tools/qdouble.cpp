#include <iostream>
#include <string>
#include <vector>

#include "qdouble/workbench.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qdouble::run_cli(args, std::cout, std::cerr);
}
