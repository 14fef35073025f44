#include "commands.hpp"

int main(int argc, char** argv) { return sktext::cli::run(argc, argv); }
