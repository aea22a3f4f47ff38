#include <iostream>

#include "qinv/cli.hpp"

int main(int argc, char** argv) {
  const auto result = qinv::cli::run(std::vector<std::string>(argv, argv + argc));
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
