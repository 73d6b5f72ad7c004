#include "kmut/frontend/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kmut::fe::cli_main(args);
}
