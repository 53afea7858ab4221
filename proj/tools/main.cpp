#include <iostream>

#include "casimir/app/commands.hpp"

int main(int argc, char** argv) {
  return casimir::app::run_cli(argc, argv, std::cout, std::cerr);
}
