#include "cli.hpp"

int main(int argc, char** argv) { return fifosim::run_cli(argc, argv); }
