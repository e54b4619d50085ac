#include "sepsim/cli.hpp"

int main(int argc, char** argv) { return sepsim::run_cli(argc, argv); }
