#include "mdnls/cli.hpp"

int main(int argc, char** argv) { return mdnls::run_cli(argc, argv); }
