#include "gapres/cli.hpp"

int main(int argc, char** argv) { return gapres::cli::run(argc, argv); }
