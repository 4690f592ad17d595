#include "output.hpp"

#include <freeprob/error.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace freeprob::cli {

std::string decimal(double value, int precision) {
  if (value == 0.0) {
    value = 0.0;  // no "-0"
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

std::string decimal(const Rational& value, int precision) { return decimal(to_double(value), precision); }

std::string exact_pair(const Rational& value, int precision) {
  return to_string(value) + "\t" + decimal(value, precision);
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DomainError("cannot write " + path);
  }
  out << content;
}

} // namespace freeprob::cli
