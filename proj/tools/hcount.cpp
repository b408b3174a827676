#include "heightcount/heightcount.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

// exit codes: 0 ok, 1 a check failed, 2 bad input, 3 computation error
int exit_for(hc_status s) {
  switch (s) {
    case HC_OK: return 0;
    case HC_E_INVALID_ARGUMENT:
    case HC_E_PARSE:
    case HC_E_DOMAIN:
    case HC_E_UNSUPPORTED: return 2;
    default: return 3;
  }
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

struct Session {
  hc_session* s = nullptr;
  Session() {
    if (hc_session_new(&s) != HC_OK) {
      std::fprintf(stderr, "hcount: cannot create session\n");
      std::exit(3);
    }
  }
  ~Session() { hc_session_free(s); }
};

int report_error(hc_session* s, hc_status st) {
  std::fprintf(stderr, "hcount: error (%s): %s\n", hc_status_name(st), hc_last_error(s));
  return exit_for(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting points of bounded height: exact counts against certified bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  long prec_start = 64, prec_cap = 8192;
  if (const char* env = std::getenv("HCOUNT_PRECISION_CAP")) {
    try {
      prec_cap = std::stol(env);
    } catch (const std::exception&) {
      std::fprintf(stderr, "hcount: HCOUNT_PRECISION_CAP is not an integer: %s\n", env);
      return 2;
    }
  }
  std::uint64_t budget = 200000000;
  unsigned jobs = 1;
  std::uint32_t seed = 42;
  std::string format;
  long report_prec = 128;

  app.add_option("--precision-start", prec_start, "initial working precision in bits")->capture_default_str();
  app.add_option("--precision-cap", prec_cap, "precision cap in bits (default from HCOUNT_PRECISION_CAP)")
      ->capture_default_str();
  app.add_option("--budget", budget, "enumeration budget in candidate points")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads across instances")->capture_default_str();
  app.add_option("--seed", seed, "seed of generated instances")->capture_default_str();
  app.add_option("--format", format, "jsonl, csv or pretty");
  app.add_option("--report-precision", report_prec, "bits used for printed balls")->capture_default_str();

  std::string height_file;
  auto* height = app.add_subcommand("height", "print heights of the instances in a file");
  height->add_option("file", height_file, "instance file")->required();

  std::string count_file, radius;
  auto* count = app.add_subcommand("count", "exact counts and bound comparisons for instances in a file");
  count->add_option("file", count_file, "instance file")->required();
  count->add_option("-R,--radius", radius, "radius R (or B) overriding the file");

  std::string target, summary;
  std::size_t tolerance = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite or an instance file");
  verify->add_option("suite", target, "cnt-lem, thm1, main1, main2, sunits, ffield, all, or a file")->required();
  verify->add_option("--summary", summary, "write the CSV summary to this path ('-' for stderr)");
  verify->add_option("--tolerance", tolerance, "inconclusive records allowed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  Session ses;
  hc_session* s = ses.s;
  hc_status st = hc_set_precision(s, prec_start, prec_cap);
  if (st == HC_OK) st = hc_set_budget(s, budget);
  if (st == HC_OK) st = hc_set_jobs(s, jobs);
  if (st == HC_OK) st = hc_set_seed(s, seed);
  if (st == HC_OK) st = hc_set_report_precision(s, report_prec);
  if (st == HC_OK) st = hc_set_inconclusive_tolerance(s, tolerance);
  if (st == HC_OK) st = hc_set_format_name(s, format.empty() ? (*verify ? "jsonl" : "pretty") : format.c_str());
  if (st != HC_OK) return report_error(s, st);

  int code = 0;
  std::string text;
  if (*height || *count) {
    const std::string& path = *height ? height_file : count_file;
    if (!read_file(path, text)) {
      std::fprintf(stderr, "hcount: cannot open '%s'\n", path.c_str());
      return 2;
    }
    st = *height ? hc_height(s, text.c_str(), path.c_str())
                 : hc_count(s, text.c_str(), path.c_str(), radius.empty() ? nullptr : radius.c_str(), &code);
  } else {
    const char* names[] = {"cnt-lem", "thm1", "main1", "main2", "sunits", "ffield", "all"};
    bool is_suite = false;
    for (const char* n : names) is_suite = is_suite || target == n;
    if (is_suite) {
      st = hc_verify(s, target.c_str(), &code);
    } else if (read_file(target, text)) {
      st = hc_verify_document(s, text.c_str(), target.c_str(), &code);
    } else {
      std::fprintf(stderr, "hcount: '%s' is neither a suite nor a readable file\n", target.c_str());
      return 2;
    }
  }
  if (st != HC_OK) return report_error(s, st);

  std::fputs(hc_output(s), stdout);
  std::fflush(stdout);
  if (*verify && !summary.empty()) {
    if (summary == "-") {
      std::fputs(hc_summary(s), stderr);
    } else {
      std::ofstream out(summary);
      if (!out) {
        std::fprintf(stderr, "hcount: cannot write '%s'\n", summary.c_str());
        return 2;
      }
      out << hc_summary(s);
    }
  }
  return code;
}
