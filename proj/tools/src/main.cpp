#include <iostream>

#include "bnlf/cli.hpp"

int main(int argc, char** argv) {
  return bnlf::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
