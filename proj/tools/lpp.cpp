#include "lpp/cli.hpp"

int main(int argc, char** argv) { return lpp::cli::run(argc, argv); }
