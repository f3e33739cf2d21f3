#include <iostream>

#include "rigidity/selftest.hpp"

int main() {
  const int failures = rigidity::run_selftest(std::cout);
  return failures == 0 ? 0 : 1;
}
