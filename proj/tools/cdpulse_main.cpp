#include "cdpulse/harness.hpp"

int main(int argc, char** argv) { return cdpulse::run_cli(argc, argv); }
