#include <iostream>

#include "nilosc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return nilosc::cli::run(args, std::cout, std::cerr);
}
