#include <iostream>

#include "expfield/cli.hpp"

int main(int argc, char** argv) {
  return expfield::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
