#include "qmine/cli.hpp"

int main(int argc, char** argv) { return qmine::cli::run(argc, argv); }
