// Runs every acceptance criterion once; exit status 0 iff all pass.
#include "nonclass/app/reproduce.hpp"

#include <iostream>

int main() {
  nonclass::app::ReproduceOptions options;
  options.details = false;
  const auto summary = nonclass::app::run_reproduce(options, std::cout);
  return summary.all_passed() && summary.results.size() == nonclass::app::criteria().size() ? 0 : 1;
}
