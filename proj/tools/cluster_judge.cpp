#include <iostream>

#include "cluster_judge/cli.hpp"

int main(int argc, char** argv) {
  return cluster_judge::run_cli(argc, argv, std::cout, std::cerr);
}
