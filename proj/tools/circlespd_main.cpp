#include "circlespd/cli.hpp"

int main(int argc, char** argv) { return circlespd::cli::run(argc, argv); }
