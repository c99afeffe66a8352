#include <iostream>

#include "starweb/cli.hpp"

int main(int argc, char** argv) {
  return starweb::cli::run(argc, argv, std::cout, std::cerr);
}
