// Runs criteria 1..11 and prints one PASS/FAIL line per criterion.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "wa/suite.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  bool all = true;
  wa::run_suite(ids, [&](const wa::CriterionResult& r) {
    std::cout << wa::format_result(r) << std::endl;
    all = all && r.passed;
  });
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
