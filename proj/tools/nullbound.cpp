#include <iostream>

#include "nullbound/cli.hpp"

int main(int argc, char** argv) {
  return nullbound::cli::main_entry(argc, argv, std::cout, std::cerr, std::cin);
}
