#include <iostream>

#include "clockgap/cli.hpp"

int main(int argc, char** argv) {
  return clockgap::cli::run(argc, argv, std::cout, std::cerr);
}
