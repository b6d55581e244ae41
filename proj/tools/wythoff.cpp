#include <iostream>

#include "wythoff/cli.hpp"

int main(int argc, char** argv) {
  return wythoff::cli::run(argc, argv, std::cout, std::cerr);
}
