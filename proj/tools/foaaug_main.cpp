//
//  foaaug_main.cpp
//  foaaug
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include <string>
#include <vector>

#include "foaaug/cli.hpp"

int main(int argc, char** argv) {
  return foaaug::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
