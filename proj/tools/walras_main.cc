#include <iostream>
#include <string>
#include <vector>

#include "walras/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return walras::RunCli(args, std::cout, std::cerr);
}
