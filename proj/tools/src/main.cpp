#include "cli.hpp"

int main(int argc, char** argv) { return vitalscan::run_cli(argc, argv); }
