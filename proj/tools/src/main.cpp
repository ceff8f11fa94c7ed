#include "markedpoints/cli.hpp"

int main(int argc, char** argv) { return markedpoints::cli::main(argc, argv); }
