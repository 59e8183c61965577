#include <iostream>

#include "secant3/cli.hpp"

int main(int argc, char** argv) {
  return secant3::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
