#include "spheremag/cli/commands.hpp"

int main(int argc, char** argv) { return spheremag::cli::main_entry(argc, argv); }
