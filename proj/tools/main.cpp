#include "ndeq/cli.hpp"

int main(int argc, char** argv) { return ndeq::run_cli(argc, argv); }
