#include "cli.hpp"

int main(int argc, char** argv) { return hydrocert::cli::main_entry(argc, argv); }
