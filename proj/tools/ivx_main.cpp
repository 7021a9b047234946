#include <iostream>

#include "ivx/cli.hpp"

int main(int argc, char** argv) {
  return ivx::run_cli(argc, argv, std::cout, std::cerr);
}
