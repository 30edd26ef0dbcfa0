#include "ddts/cli.hpp"

int main(int argc, char** argv) { return ddts::cli_main(argc, argv); }
