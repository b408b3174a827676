#include "heightcount/heightcount.h"

#include "heightcount/error.hpp"
#include "heightcount/suites.hpp"

#include <json.hpp>

#include <new>
#include <sstream>

struct hc_session {
  hc::SuiteConfig cfg;
  hc::PrecisionPolicy precision = hc::default_precision();
  hc::Format format = hc::Format::JsonLines;
  std::size_t tolerance = 0;
  std::string output, summary, error;
};

namespace {

hc_status status_of(hc::ErrorCode c) { return static_cast<hc_status>(static_cast<int>(c)); }

template <class F>
hc_status guarded(hc_session* s, F&& f) {
  if (!s) return HC_E_INVALID_ARGUMENT;
  s->error.clear();
  try {
    hc::set_default_precision(s->precision);
    f();
    return HC_OK;
  } catch (const hc::Error& e) {
    s->error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    s->error = "out of memory";
    return HC_E_INTERNAL;
  } catch (const std::exception& e) {
    s->error = e.what();
    return HC_E_INTERNAL;
  }
}

std::string source_or(const char* name) { return name && *name ? name : "<input>"; }

void finish_records(hc_session* s, const std::vector<hc::Record>& rs, int* exit_code) {
  s->output = hc::render(rs, s->format, s->cfg.report_prec);
  s->summary = hc::csv_summary(rs);
  if (exit_code) *exit_code = hc::verdict_exit_code(rs, s->tolerance);
}

std::string render_heights(const std::vector<hc::HeightText>& hs, hc::Format f) {
  std::ostringstream o;
  switch (f) {
    case hc::Format::Pretty:
      for (const auto& h : hs) {
        if (hs.size() > 1) o << h.id << ": ";
        o << h.kind << " = " << h.line() << "\n";
      }
      break;
    case hc::Format::JsonLines:
      for (const auto& h : hs) {
        nlohmann::ordered_json j;
        j["instance"] = h.id;
        j["kind"] = h.kind;
        if (h.exact) j["exact"] = hc::to_string(*h.exact);
        j["finite"] = hc::to_string(h.finite);
        j["root"] = h.root;
        j["value_mid"] = h.ball.mid;
        j["value_rad"] = h.ball.rad;
        j["value_prec"] = h.ball.prec;
        o << j.dump() << "\n";
      }
      break;
    case hc::Format::Csv:
      o << "instance,kind,exact,finite,root,value_mid,value_rad,value_prec\n";
      for (const auto& h : hs)
        o << h.id << "," << h.kind << "," << (h.exact ? hc::to_string(*h.exact) : "") << "," << hc::to_string(h.finite)
          << "," << h.root << "," << h.ball.mid << "," << h.ball.rad << "," << h.ball.prec << "\n";
      break;
  }
  return o.str();
}

}  // namespace

extern "C" {

const char* hc_version(void) { return "1.0.0"; }

const char* hc_status_name(hc_status s) {
  if (s == HC_OK) return "ok";
  if (s < HC_E_INVALID_ARGUMENT || s > HC_E_INTERNAL) return "unknown";
  return hc::error_code_name(static_cast<hc::ErrorCode>(s));
}

hc_status hc_session_new(hc_session** out) {
  if (!out) return HC_E_INVALID_ARGUMENT;
  *out = new (std::nothrow) hc_session();
  return *out ? HC_OK : HC_E_INTERNAL;
}

void hc_session_free(hc_session* s) { delete s; }

hc_status hc_set_precision(hc_session* s, long start_bits, long cap_bits) {
  return guarded(s, [&] {
    hc::require(start_bits >= 16 && cap_bits >= start_bits, "precision needs 16 <= start <= cap");
    s->precision = {static_cast<mpfr_prec_t>(start_bits), static_cast<mpfr_prec_t>(cap_bits)};
  });
}

hc_status hc_set_budget(hc_session* s, uint64_t budget) {
  return guarded(s, [&] {
    hc::require(budget > 0, "budget must be positive");
    s->cfg.budget = budget;
  });
}

hc_status hc_set_jobs(hc_session* s, unsigned jobs) {
  return guarded(s, [&] {
    hc::require(jobs > 0, "jobs must be positive");
    s->cfg.jobs = jobs;
  });
}

hc_status hc_set_seed(hc_session* s, uint32_t seed) {
  return guarded(s, [&] { s->cfg.seed = seed; });
}

hc_status hc_set_format(hc_session* s, hc_format f) {
  return guarded(s, [&] {
    hc::require(f >= HC_FORMAT_JSONL && f <= HC_FORMAT_PRETTY, "unknown format");
    s->format = static_cast<hc::Format>(f);
  });
}

hc_status hc_set_format_name(hc_session* s, const char* name) {
  return guarded(s, [&] {
    hc::require(name != nullptr, "format name is null");
    s->format = hc::parse_format(name);
  });
}

hc_status hc_set_report_precision(hc_session* s, long bits) {
  return guarded(s, [&] {
    hc::require(bits >= 16, "report precision must be at least 16 bits");
    s->cfg.report_prec = static_cast<mpfr_prec_t>(bits);
  });
}

hc_status hc_set_inconclusive_tolerance(hc_session* s, size_t n) {
  return guarded(s, [&] { s->tolerance = n; });
}

hc_status hc_height(hc_session* s, const char* yaml, const char* source_name) {
  return guarded(s, [&] {
    hc::require(yaml != nullptr, "document is null");
    auto is = hc::parse_instances(yaml, source_or(source_name));
    std::vector<hc::HeightText> hs;
    for (const auto& I : is) hs.push_back(hc::height_instance(I, s->cfg.report_prec));
    s->output = render_heights(hs, s->format);
    s->summary.clear();
  });
}

hc_status hc_count(hc_session* s, const char* yaml, const char* source_name, const char* radius, int* exit_code) {
  return guarded(s, [&] {
    hc::require(yaml != nullptr, "document is null");
    auto is = hc::parse_instances(yaml, source_or(source_name));
    std::optional<hc::Rat> R;
    if (radius) {
      R = hc::parse_rat(radius);
      hc::require(*R >= 0, "radius must be non-negative");
    }
    std::vector<hc::Record> rs;
    for (const auto& I : is) {
      auto r = hc::count_instance(I, s->cfg, R);
      rs.insert(rs.end(), r.begin(), r.end());
    }
    finish_records(s, rs, exit_code);
  });
}

hc_status hc_verify(hc_session* s, const char* suite, int* exit_code) {
  return guarded(s, [&] {
    hc::require(suite != nullptr, "suite name is null");
    if (!hc::is_suite(suite))
      hc::fail(hc::ErrorCode::InvalidArgument,
               std::string("unknown suite '") + suite + "' (cnt-lem, thm1, main1, main2, sunits, ffield, all)");
    finish_records(s, hc::run_suite(suite, s->cfg), exit_code);
  });
}

hc_status hc_verify_document(hc_session* s, const char* yaml, const char* source_name, int* exit_code) {
  return guarded(s, [&] {
    hc::require(yaml != nullptr, "document is null");
    auto is = hc::parse_instances(yaml, source_or(source_name));
    finish_records(s, hc::count_instances(is, s->cfg), exit_code);
  });
}

const char* hc_output(const hc_session* s) { return s ? s->output.c_str() : ""; }
const char* hc_summary(const hc_session* s) { return s ? s->summary.c_str() : ""; }
const char* hc_last_error(const hc_session* s) { return s ? s->error.c_str() : ""; }

}  // extern "C"
