#include "essx/acceptance.hpp"

#include <iostream>

int main() {
    essx::acceptance::SuiteResult suite =
        essx::acceptance::run_all(0, essx::Int(0), ESSX_CORPUS_DIR, std::cout);
    std::cout << (suite.all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
    return suite.all_pass ? 0 : 1;
}
