#include "cli.hpp"

int main(int argc, char** argv) { return hdrrt::cli::run_cli(argc, argv); }
