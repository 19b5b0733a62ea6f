#include "monoband/cli.hpp"

int main(int argc, char** argv) { return monoband::run_cli(argc, argv); }
