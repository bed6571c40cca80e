#include "run.hpp"

int main(int argc, char** argv)
{
    return divalg::cli::main_entry(argc, argv);
}
