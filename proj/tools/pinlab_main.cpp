#include "pinlab/cli.hpp"

int main(int argc, char** argv) { return pinlab::run_cli(argc, argv); }
