// Acceptance suite: runs every built-in verification criterion and prints
// one pass/fail line per criterion. Nonzero exit on any failure.

#include <cstdio>
#include <iostream>

#include "spinsqueeze/verification.hpp"

int main() {
  const spinsqueeze::VerificationReport report = spinsqueeze::run_verification();
  std::cout << spinsqueeze::format_report(report);
  return report.all_pass() ? 0 : 1;
}
