#include "udtn/engine.hpp"

int main(int argc, char** argv) { return udtn::cli_main(argc, argv); }
