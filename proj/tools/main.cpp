#include "solitonlab/cli.hpp"

int main(int argc, char** argv) { return solitonlab::cli::run_cli(argc, argv); }
