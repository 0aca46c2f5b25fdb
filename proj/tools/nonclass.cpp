#include "nonclass/app/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nonclass::app::run_cli(argc, argv, std::cout, std::cerr); }
