#pragma once

#include "heightcount/bounds.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hc {

// One line of a verification report. kind is LOWER, UPPER or CHECK.
struct Record {
  std::string suite;
  std::string instance;
  std::string kind;
  std::string theorem;
  std::string inputs;
  std::string R;      // decimal or p/q; empty when not applicable
  std::string exact;  // exact count, or the measured quantity of a check
  std::string count_mode = "exact";
  std::optional<Real> bound;
  bool applicable = true;
  std::string verdict;
  std::string detail;
};

Record record_from(const std::string& suite, const BoundReport& r);
Record check_record(const std::string& suite, const std::string& instance, const std::string& theorem,
                    const std::string& inputs, bool holds, const std::string& detail = "");

// Ball serialisation: decimal midpoint, decimal radius, precision in bits.
struct BallText {
  std::string mid, rad;
  long prec = 0;
};
BallText ball_text(const Real& x, mpfr_prec_t prec);
std::string real_text(const Real& x, int digits = 12);

enum class Format { JsonLines, Csv, Pretty };
Format parse_format(const std::string& s);

std::string to_json_line(const Record& r, mpfr_prec_t prec = 128);
std::string csv_header();
std::string to_csv_row(const Record& r, mpfr_prec_t prec = 128);
std::string to_pretty(const Record& r);

struct Tally {
  std::size_t holds = 0, violated = 0, inconclusive = 0, not_applicable = 0;
  std::size_t total() const { return holds + violated + inconclusive + not_applicable; }
};
// lower bounds below their threshold count as not applicable
Tally tally(const std::vector<Record>& rs);
std::string csv_summary(const std::vector<Record>& rs);
std::string render(const std::vector<Record>& rs, Format f, mpfr_prec_t prec = 128);

}  // namespace hc
