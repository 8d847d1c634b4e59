#include <iostream>

#include "pg4/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return pg4::cli::run({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}
