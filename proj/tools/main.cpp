// SPDX-License-Identifier: Apache-2.0
#include "spinclone/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return spinclone::cli::run(argc, argv, std::cout, std::cerr);
}
