#include "commands.hpp"

#include <freeprob/error.hpp>

#include <iostream>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSizeCap = 3;
constexpr int kExitNumeric = 4;

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free probability toolkit: noncrossing cumulants, free convolution, Young diagrams, matrix models"};
  app.name("freeprob");
  app.require_subcommand(1);
  app.fallthrough();
  int precision = 10;
  app.add_option("--precision", precision, "Significant digits for decimal output")->check(CLI::Range(1, 17));
  freeprob::cli::register_exact_commands(app, precision);
  freeprob::cli::register_rmt_commands(app, precision);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const freeprob::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const freeprob::SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << '\n';
    return kExitSizeCap;
  } catch (const freeprob::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
