#include "roadmap/cli.hpp"

int main(int argc, char** argv) { return rmg::cli_main(argc, argv); }
