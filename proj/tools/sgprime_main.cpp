#include "cli.hpp"

int main(int argc, char** argv) { return sgprime::cli::run_cli(argc, argv); }
