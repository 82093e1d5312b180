#include <iostream>

#include "lowrank/cli.hpp"

int main(int argc, char** argv) {
	return lowrank::run_cli(argc, argv, std::cout, std::cerr);
}
