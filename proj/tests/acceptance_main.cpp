#include <iostream>

#include "qmem/verify/acceptance.hpp"

int main() {
    const auto results = qmem::verify::run_acceptance();
    qmem::verify::print_results(std::cout, results);
    return qmem::verify::all_passed(results) ? 0 : 1;
}
