#include <iostream>

#include "sdc/cli.hpp"

int main(int argc, char** argv) {
  const auto parsed = sdc::cli::parse_job(argc, argv);
  if (!parsed.job) {
    (parsed.status == 0 ? std::cout : std::cerr) << parsed.message << '\n';
    return parsed.status;
  }
  const auto report = sdc::cli::run(*parsed.job);
  std::cout << report.body.dump(2) << '\n';
  return report.status;
}
