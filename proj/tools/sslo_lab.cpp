#include "sslo/cli.hpp"

int main(int argc, char** argv) { return sslo::cli::main_entry(argc, argv); }
