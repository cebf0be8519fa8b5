#include <vector>

#include "arrfree/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return arrfree::run_command(args);
}
