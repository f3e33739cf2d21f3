#include "rigidity/format.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "rigidity/errors.hpp"

namespace rigidity {

std::string fmt_real(double x) {
  if (x == 0.0) x = 0.0;  // flush -0.0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

std::string fmt_complex(std::complex<double> z) {
  double re = z.real() == 0.0 ? 0.0 : z.real();
  double im = z.imag() == 0.0 ? 0.0 : z.imag();
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.12e%+.12ei", re, im);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

double parse_momentum_component(const std::string& token) {
  std::string s;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw input_error("empty momentum component");

  double sign = 1.0;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    if (s[pos] == '-') sign = -1.0;
    ++pos;
  }
  std::string body = s.substr(pos);

  auto pi_at = body.find("pi");
  if (pi_at != std::string::npos) {
    double mult = 1.0, div = 1.0;
    std::string pre = body.substr(0, pi_at);
    std::string post = body.substr(pi_at + 2);
    if (!pre.empty()) {
      if (pre.back() == '*') pre.pop_back();
      if (!pre.empty()) mult = std::stod(pre);
    }
    if (!post.empty()) {
      if (post[0] != '/') throw input_error("bad momentum component '" + token + "'");
      div = std::stod(post.substr(1));
      if (div == 0.0) throw input_error("division by zero in momentum component");
    }
    return sign * mult * M_PI / div;
  }

  try {
    std::size_t used = 0;
    double value = std::stod(body, &used);
    if (used != body.size()) throw input_error("bad momentum component '" + token + "'");
    return sign * value;
  } catch (const std::exception&) {
    throw input_error("bad momentum component '" + token + "'");
  }
}

std::vector<double> parse_momentum_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_momentum_component(item));
  if (out.empty()) throw input_error("empty momentum list");
  return out;
}

}  // namespace rigidity
