#include "cli.hpp"

int main(int argc, char** argv) { return helix::cli::run(argc, argv); }
