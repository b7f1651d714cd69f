#include <iostream>
#include <string>
#include <vector>

#include "esl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return esl::cli::run(args, std::cin, std::cout, std::cerr);
}
