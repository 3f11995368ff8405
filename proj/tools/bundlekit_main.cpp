#include <string>
#include <vector>

#include "bundlekit/cli.hpp"

int main(int argc, char** argv) {
  return bundlekit::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
