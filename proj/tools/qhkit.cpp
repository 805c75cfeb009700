#include "qhkit/cli.hpp"

int main(int argc, char** argv) { return qhkit::cli::run(argc, argv); }
