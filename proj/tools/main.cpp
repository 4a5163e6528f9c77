#include "carleman/cli.hpp"

int main(int argc, char** argv) { return carleman::cli::main(argc, argv); }
