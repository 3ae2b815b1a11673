#include <string>
#include <vector>

#include "kaos2b/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kaos2b::run_cli(args);
}
