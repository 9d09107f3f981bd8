#include "rchroma/cli.hpp"

int main(int argc, char** argv) { return rchroma::cli::run(argc, argv); }
