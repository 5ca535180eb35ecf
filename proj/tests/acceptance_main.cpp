#include <iostream>

#include "torus/acceptance.hpp"

int main() {
  bool ok = torus::accept::run_all(std::cout);
  std::cout << (ok ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << std::endl;
  return ok ? 0 : 1;
}
