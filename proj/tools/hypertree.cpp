#include "hypertree/cli.hpp"

int main(int argc, char** argv) { return hypertree::cli_dispatch(argc, argv); }
