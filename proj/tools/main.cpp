#include <string>
#include <vector>

#include "stgl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stgl::run_cli(args);
}
