#include <iostream>

#include "rosenblatt/cli.h"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return rosenblatt::run_cli(argc, argv, std::cout, std::cerr);
}
