#include "modapprox/cli.hpp"

int main(int argc, char** argv) { return modapprox::cli::dispatch(argc, argv); }
