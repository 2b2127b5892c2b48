#include <iostream>
#include <string>
#include <vector>

#include "stm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const stm::cli::Outcome r = stm::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
