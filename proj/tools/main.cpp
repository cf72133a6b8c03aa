#include <iostream>

#include "h3geom/cli.hpp"

int main(int argc, char** argv) { return h3::run(argc, argv, std::cout, std::cerr); }
