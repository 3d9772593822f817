#include "exponentia/cli.hpp"

int main(int argc, char** argv) { return exponentia::cli::run_cli(argc, argv); }
