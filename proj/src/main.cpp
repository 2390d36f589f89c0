#include <iostream>

#include "logtangent/clirun.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  logtangent::CliResult r = logtangent::run_cli(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
