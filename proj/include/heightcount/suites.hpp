#pragma once

#include "heightcount/instance.hpp"
#include "heightcount/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hc {

struct SuiteConfig {
  std::uint32_t seed = 42;
  unsigned jobs = 1;
  std::uint64_t budget = 200000000;
  mpfr_prec_t report_prec = 128;
};

// cnt-lem, thm1, main1, main2, sunits, ffield
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
// "all" runs every suite in the listed order. Records come back in task
// order whatever the job count.
std::vector<Record> run_suite(const std::string& name, const SuiteConfig& cfg = {});

// Bound records for a countable instance (module, main1, main2, sunits,
// curve); `R` overrides the radius in the file.
std::vector<Record> count_instance(const Instance& I, const SuiteConfig& cfg = {},
                                   const std::optional<Rat>& R = std::nullopt);
std::vector<Record> count_instances(const std::vector<Instance>& is, const SuiteConfig& cfg = {});

struct HeightText {
  std::string id;
  std::string kind;          // H, h or h_D
  std::optional<Rat> exact;  // when the value is rational
  Rat finite;                // finite part of value^root
  int root = 1;
  BallText ball;
  std::string line() const;  // "3 (exact)" or "mid +/- rad (prec bits)"
};
HeightText height_instance(const Instance& I, mpfr_prec_t prec = 128);

// exit status of a verification run: 0 iff no applicable record is VIOLATED
// and the inconclusive ones stay within the tolerance
int verdict_exit_code(const std::vector<Record>& rs, std::size_t inconclusive_tolerance = 0);

}  // namespace hc
