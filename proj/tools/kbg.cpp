#include <string>
#include <vector>

#include "kbg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kbg::cli::run(args);
}
