#include <iostream>
#include <string>
#include <vector>

#include "nilrad/cli.hpp"

int main(int argc, char** argv) {
  try {
    return nilrad::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
