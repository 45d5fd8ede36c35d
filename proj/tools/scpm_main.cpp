#include "cli.hpp"

int main(int argc, char** argv) { return scpm::cli::run(argc, argv); }
