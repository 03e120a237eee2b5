#include "cmaxent/harness.hpp"

int main(int argc, char** argv) { return cmaxent::run_cli(argc, argv); }
