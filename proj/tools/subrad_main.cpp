#include "subrad/cli.hpp"

int main(int argc, char** argv) { return subrad::cli::run_main(argc, argv); }
