#include "heightcount/report.hpp"

#include "heightcount/error.hpp"

#include <json.hpp>
#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace hc {

namespace {

std::string fmt_mpfr(const char* f, int digits, mpfr_t x) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, f, digits, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

// "d.ddde+xx" to an exact rational
Rat parse_sci(const std::string& s) {
  auto e = s.find_first_of("eE");
  Rat m = parse_rat(s.substr(0, e));
  if (e == std::string::npos) return m;
  long ex = std::stol(s.substr(e + 1));
  Rat p = pow_rat(Rat(10), std::labs(ex));
  return ex >= 0 ? Rat(m * p) : Rat(m / p);
}

std::string rat_field(const Rat& R) {
  if (R.get_den() == 1) return to_string(R);
  // short decimals read better than p/q when they terminate
  Int den = R.get_den();
  Int d = den;
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  if (d != 1) return to_string(R);
  int k = 0;
  Int t = 1;
  while (Rat(R * Rat(t)).get_den() != 1) t *= 10, ++k;
  Int v = Rat(R * Rat(t)).get_num();
  bool neg = v < 0;
  if (neg) v = -v;
  std::string s = v.get_str();
  while (static_cast<int>(s.size()) <= k) s = "0" + s;
  s.insert(s.size() - static_cast<std::size_t>(k), ".");
  return (neg ? "-" : "") + s;
}

}  // namespace

Record record_from(const std::string& suite, const BoundReport& r) {
  Record o;
  o.suite = suite;
  o.instance = r.instance;
  o.kind = bound_kind_name(r.kind);
  o.theorem = r.theorem;
  o.inputs = r.inputs;
  o.R = rat_field(r.R);
  o.exact = to_string(r.exact);
  o.count_mode = r.count_mode;
  o.bound = r.bound;
  o.applicable = r.applicable;
  o.verdict = verdict_name(r.verdict);
  return o;
}

Record check_record(const std::string& suite, const std::string& instance, const std::string& theorem,
                    const std::string& inputs, bool holds, const std::string& detail) {
  Record o;
  o.suite = suite;
  o.instance = instance;
  o.kind = "CHECK";
  o.theorem = theorem;
  o.inputs = inputs;
  o.count_mode = "";
  o.verdict = holds ? "HOLDS" : "VIOLATED";
  o.detail = detail;
  return o;
}

BallText ball_text(const Real& x, mpfr_prec_t prec) {
  Ball b = x.eval(prec);
  BallText t;
  t.prec = static_cast<long>(prec);
  if (!b.finite()) {
    t.mid = "nan";
    t.rad = "inf";
    return t;
  }
  const int digits = static_cast<int>(std::floor(static_cast<double>(prec) * 0.30103)) + 1;
  mpfr_t m;
  mpfr_init2(m, prec + 16);
  Rat mid = b.mid();
  mpfr_set_q(m, mid.get_mpq_t(), MPFR_RNDN);
  t.mid = fmt_mpfr("%.*Re", digits - 1, m);
  mpfr_clear(m);
  // widen the radius by the decimal rounding of the midpoint
  Rat rad = b.rad() + abs_rat(mid - parse_sci(t.mid));
  mpfr_t r;
  mpfr_init2(r, 64);
  mpfr_set_q(r, rad.get_mpq_t(), MPFR_RNDU);
  t.rad = fmt_mpfr("%.*RUe", 3, r);
  mpfr_clear(r);
  return t;
}

std::string real_text(const Real& x, int digits) { return x.eval(128).mid_str(digits); }

Format parse_format(const std::string& s) {
  if (s == "jsonl" || s == "json" || s == "json-lines") return Format::JsonLines;
  if (s == "csv") return Format::Csv;
  if (s == "pretty") return Format::Pretty;
  fail(ErrorCode::InvalidArgument, "unknown format '" + s + "' (jsonl, csv, pretty)");
}

std::string to_json_line(const Record& r, mpfr_prec_t prec) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["instance"] = r.instance;
  j["kind"] = r.kind;
  j["theorem"] = r.theorem;
  j["inputs"] = r.inputs;
  if (!r.R.empty()) j["R"] = r.R;
  j["exact"] = r.exact;
  if (!r.count_mode.empty()) j["count_mode"] = r.count_mode;
  if (r.bound) {
    BallText t = ball_text(*r.bound, prec);
    j["bound_mid"] = t.mid;
    j["bound_rad"] = t.rad;
    j["bound_prec"] = t.prec;
  }
  j["applicable"] = r.applicable;
  j["verdict"] = r.verdict;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j.dump();
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

}  // namespace

std::string csv_header() {
  return "suite,instance,kind,theorem,inputs,R,exact,count_mode,bound_mid,bound_rad,bound_prec,applicable,verdict,detail";
}

std::string to_csv_row(const Record& r, mpfr_prec_t prec) {
  BallText t;
  if (r.bound) t = ball_text(*r.bound, prec);
  std::vector<std::string> cells{r.suite,  r.instance, r.kind,  r.theorem,  r.inputs,
                                 r.R,      r.exact,    r.count_mode, t.mid, t.rad,
                                 r.bound ? std::to_string(t.prec) : "", r.applicable ? "true" : "false", r.verdict,
                                 r.detail};
  std::string o;
  for (std::size_t i = 0; i < cells.size(); ++i) o += (i ? "," : "") + csv_cell(cells[i]);
  return o;
}

std::string to_pretty(const Record& r) {
  std::ostringstream s;
  s << r.verdict << "  " << r.suite << "/" << r.instance << "  " << r.kind << " " << r.theorem;
  if (!r.R.empty()) s << "  R=" << r.R;
  if (!r.exact.empty()) s << "  exact " << r.exact;
  if (r.count_mode == "certified_lower") s << " (certified lower)";
  if (r.bound) s << "  bound " << real_text(*r.bound);
  if (!r.applicable) s << "  [below threshold]";
  if (!r.detail.empty()) s << "  " << r.detail;
  return s.str();
}

Tally tally(const std::vector<Record>& rs) {
  Tally t;
  for (const auto& r : rs) {
    if (!r.applicable)
      ++t.not_applicable;
    else if (r.verdict == "HOLDS")
      ++t.holds;
    else if (r.verdict == "VIOLATED")
      ++t.violated;
    else
      ++t.inconclusive;
  }
  return t;
}

std::string csv_summary(const std::vector<Record>& rs) {
  std::map<std::string, std::vector<Record>> by;
  std::vector<std::string> order;
  for (const auto& r : rs) {
    if (!by.count(r.suite)) order.push_back(r.suite);
    by[r.suite].push_back(r);
  }
  std::ostringstream s;
  s << "suite,records,holds,violated,inconclusive,not_applicable\n";
  for (const auto& name : order) {
    Tally t = tally(by[name]);
    s << name << "," << t.total() << "," << t.holds << "," << t.violated << "," << t.inconclusive << ","
      << t.not_applicable << "\n";
  }
  return s.str();
}

std::string render(const std::vector<Record>& rs, Format f, mpfr_prec_t prec) {
  std::ostringstream s;
  switch (f) {
    case Format::JsonLines:
      for (const auto& r : rs) s << to_json_line(r, prec) << "\n";
      break;
    case Format::Csv:
      s << csv_header() << "\n";
      for (const auto& r : rs) s << to_csv_row(r, prec) << "\n";
      break;
    case Format::Pretty:
      for (const auto& r : rs) s << to_pretty(r) << "\n";
      break;
  }
  return s.str();
}

}  // namespace hc
