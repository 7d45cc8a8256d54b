#include "barrier_reach/cli_app.hpp"

int main(int argc, char** argv) { return barrier_reach::run_cli(argc, argv); }
