#include <iostream>

#include "egs/cli.hpp"

int main(int argc, char** argv) {
  return egs::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
