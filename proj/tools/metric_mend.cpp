#include <iostream>

#include "metric_mend/cli.hpp"

int main(int argc, char** argv) { return metric_mend::cli::run(argc, argv, std::cout, std::cerr); }
