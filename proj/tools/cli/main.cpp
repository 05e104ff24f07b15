#include "commands.hpp"

int main(int argc, char** argv) { return spinsq::cli::run_cli(argc, argv); }
