#include "semzk/cli.hpp"

int main(int argc, char** argv) { return semzk::cli_main(argc, argv); }
