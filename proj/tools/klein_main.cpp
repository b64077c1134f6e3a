#include "klein/io.hpp"

int main(int argc, char** argv) { return klein::cli_main(argc, argv); }
