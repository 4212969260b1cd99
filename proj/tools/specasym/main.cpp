#include "app.hpp"

int main(int argc, char** argv) { return specasym::cli::run(argc, argv); }
