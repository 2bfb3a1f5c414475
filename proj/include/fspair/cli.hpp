#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace fspair::cli {

enum ExitCode : int { kOk = 0, kToleranceViolation = 1, kUsage = 2 };

/// Entry point of the fspair tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Parses "a+bi", "a-bi", "bi" or "a" (no whitespace). Throws DomainError.
std::complex<double> parse_complex(const std::string& text);
std::string format_complex(std::complex<double> z);
/// Shortest round-trip decimal representation, independent of the locale.
std::string format_double(double x);

}  // namespace fspair::cli
