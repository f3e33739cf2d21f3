#pragma once

#include <complex>
#include <string>
#include <vector>

namespace rigidity {

// All user-facing floating point output goes through these helpers with a
// fixed %.12e format so identical invocations produce byte-identical files.

std::string fmt_real(double x);
std::string fmt_complex(std::complex<double> z);
std::string join(const std::vector<std::string>& parts, const std::string& sep);

/// Parse one momentum component: plain float or "pi", "-pi", "pi/2", "2pi/3".
double parse_momentum_component(const std::string& token);

/// Parse a comma-separated momentum vector, e.g. "0.5,1.0" or "pi,0".
std::vector<double> parse_momentum_list(const std::string& text);

}  // namespace rigidity
