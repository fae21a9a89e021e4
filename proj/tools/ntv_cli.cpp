#include "ntv/cli.hpp"

int main(int argc, char** argv) { return ntv::cli::main(argc, argv); }
