#include "fastppr/cli.hpp"

int main(int argc, char** argv) { return fastppr::cli::dispatch(argc, argv); }
