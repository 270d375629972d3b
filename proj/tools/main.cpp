#include "padicsub/cli.hpp"

int main(int argc, char** argv) { return padicsub::run_cli(argc, argv); }
