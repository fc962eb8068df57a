#include <iostream>
#include <string>
#include <vector>

#include "asymm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return asymm::cli::run(std::move(args), std::cout, std::cerr);
}
