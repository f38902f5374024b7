#include <pdcheck/cli.hpp>

int main(int argc, char** argv) { return pdcheck::run(argc, argv); }
