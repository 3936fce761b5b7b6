#include <iostream>

#include "bvista_tools/cli.hpp"

int main(int argc, char** argv) {
  return bvista::tools::cli_entry(argc, argv, std::cout, std::cerr);
}
