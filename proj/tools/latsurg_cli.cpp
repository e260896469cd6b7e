#include "latsurg/cli.hpp"

int main(int argc, char **argv) { return latsurg::cli::run(argc, argv); }
