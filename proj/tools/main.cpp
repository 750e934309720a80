#include <iostream>
#include <string>
#include <vector>

#include "rootcomb/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto res = rootcomb::cli::run(args);
  std::cout << res.out;
  std::cerr << res.err;
  return res.exit_code;
}
