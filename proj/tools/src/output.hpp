#pragma once

#include <freeprob/rational.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace freeprob::cli {

enum class Format { text, json };

/// Decimal rendering with a fixed number of significant digits.
std::string decimal(double value, int precision);
std::string decimal(const Rational& value, int precision);

/// "p/q<TAB>decimal".
std::string exact_pair(const Rational& value, int precision);

/// Writes to the named file, or to stdout when path is empty.
void emit(const std::string& path, const std::string& content);

} // namespace freeprob::cli
