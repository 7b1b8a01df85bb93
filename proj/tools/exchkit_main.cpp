#include <iostream>

#include "exchkit/commands.hpp"

int main(int argc, char** argv) {
  return exchkit::cli::run(argc, argv, std::cout, std::cerr);
}
