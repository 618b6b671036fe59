#include "cli.hpp"

int main(int argc, char** argv) { return sml::cli::main_entry(argc, argv); }
