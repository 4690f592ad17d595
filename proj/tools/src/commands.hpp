#pragma once

#include "output.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace freeprob::cli {

struct NcOptions {
  int n = 0;
  std::string format = "text";
  bool perm = false;
};

struct CumulantOptions {
  std::string moments_file;
  std::string law;
  std::string kind = "free";
  int order = 8;
  std::string format = "text";
};

struct FreeconvOptions {
  std::string a;
  std::string b;
  int order = 8;
  std::string compress;
  std::string format = "text";
};

struct DiagramOptions {
  std::string rows;
  std::string json_file;
  int order = 4;
  std::string cycles;
  std::string with;
};

struct RmtOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<int> trials;
  std::optional<int> bins;
  std::string law_a;
  std::string law_b;
  std::string law;
  std::string word;
  std::string t;
  int order = 4;
  int n_max = 4;
  std::string out;
};

void register_exact_commands(CLI::App& app, const int& precision);
void register_rmt_commands(CLI::App& app, const int& precision);

} // namespace freeprob::cli
