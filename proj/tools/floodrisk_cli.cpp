#include <iostream>
#include <string>
#include <vector>

#include "floodrisk/app/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return floodrisk::app::run(args, std::cout, std::cerr);
}
