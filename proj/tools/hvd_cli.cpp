#include <string>
#include <vector>

#include "hvd/cli.hpp"

int main(int argc, char** argv) {
  return hvd::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
