#include <iostream>

#include "timedc/cli.hpp"

int main(int argc, char** argv) {
  return timedc::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
