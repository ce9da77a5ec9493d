#include "cli.hpp"

int main(int argc, char** argv) { return springleg::cli_main(argc, argv); }
