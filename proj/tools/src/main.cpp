#include <iostream>

#include "nsjet/toolkit.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nsjet::run_toolkit(args, std::cin, std::cout, std::cerr);
}
