#ifndef MTV_REPORT_HPP
#define MTV_REPORT_HPP

#include "mtv/engine.hpp"
#include "mtv/records.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mtv {

inline constexpr const char* kToolVersion = "mtverify 0.1.0";

struct ConfigEcho {
  std::string curves_file;
  std::vector<std::string> labels;
  long max_prime = 100;
  std::vector<long> set_window;
  int max_set_size = 1;
  bool include_trivial_primes = false;
  std::vector<std::string> sha_overrides;
};

struct CurveReport {
  std::string label;
  CurveResult result;
};

struct Report {
  ConfigEcho config;
  std::vector<CurveReport> curves; // ordered by label
  long passed = 0, failed = 0, skipped = 0;

  void tally();
  // exit code semantics: 0 iff no failed verdict and every lambda resolved
  bool all_pass() const;
};

std::string render_json(const Report& r);
std::string render_csv(const Report& r);

// format is "json" or "csv"; newline terminated, deterministic.
void emit_report(const Report& r, const std::string& format,
                 const std::string& path);

std::string verdict_status_name(VerdictStatus s);

// "1", "-1", "1/2", ... for the report and the symbols header.
std::string lambda_string(const Rational& lambda);

} // namespace mtv

#endif
