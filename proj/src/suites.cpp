#include "heightcount/suites.hpp"

#include "heightcount/error.hpp"

#include <atomic>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

namespace hc {

namespace {

using Task = std::function<std::vector<Record>()>;

struct NamedTask {
  std::string suite, instance;
  Task run;
};

std::vector<Record> run_tasks(const std::vector<NamedTask>& tasks, unsigned jobs) {
  std::vector<std::vector<Record>> out(tasks.size());
  auto one = [&](std::size_t i) {
    try {
      out[i] = tasks[i].run();
    } catch (const Error& e) {
      Record r = check_record(tasks[i].suite, tasks[i].instance, "error", "", false,
                              std::string(error_code_name(e.code())) + ": " + e.what());
      r.verdict = "INCONCLUSIVE";
      out[i] = {r};
    }
  };
  if (jobs <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, tasks.size()); ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) one(i);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<Record> all;
  for (auto& v : out) all.insert(all.end(), v.begin(), v.end());
  return all;
}

bool certified_le(const Real& a, const Real& b) {
  auto c = try_compare(a, b);
  if (c) return *c != Cmp::Greater;
  return real_agree(a, b);
}

std::string num(const Real& x, int digits = 10) { return real_text(x, digits); }

std::string u64(std::uint64_t n) { return std::to_string(n); }

// smallest multiple of 1/1000 at or above f * x
Rat round_up_milli(const Real& x, long f) {
  Rat up = x.eval(128).upper() * f;
  return make_rat(ceil_rat(up * 1000), 1000);
}

Record bound_record(const std::string& suite, const std::string& id, BoundKind kind, const std::string& theorem,
                    const std::string& inputs, const Rat& R, std::uint64_t exact, const Real& bound) {
  BoundReport b;
  b.instance = id;
  b.theorem = theorem;
  b.kind = kind;
  b.R = R;
  b.exact = Int(static_cast<unsigned long>(exact));
  b.bound = bound;
  b.verdict = judge(kind, b.exact, bound);
  b.inputs = inputs;
  return record_from(suite, b);
}

std::string pad3(std::size_t i) {
  std::string s = std::to_string(i);
  while (s.size() < 3) s = "0" + s;
  return s;
}

// ---------------------------------------------------------------- cnt-lem

RatMat random_basis(std::mt19937& rng, std::size_t N, std::size_t L, int range) {
  std::uniform_int_distribution<int> e(-range, range);
  while (true) {
    RatMat b(N, L);
    for (auto& x : b.a) x = e(rng);
    if (rank(b) == L) return b;
  }
}

std::string basis_text(const RatMat& B) {
  std::ostringstream s;
  s << "N=" << B.rows << " L=" << B.cols << " cols=";
  for (std::size_t j = 0; j < B.cols; ++j) {
    s << (j ? ";" : "");
    for (std::size_t i = 0; i < B.rows; ++i) s << (i ? "," : "") << to_string(B(i, j));
  }
  return s.str();
}

double upper_d(const Real& x) { return x.eval(64).upper().get_d(); }

std::vector<Record> lattice_task(const RatMat& B, const std::string& id) {
  const std::string suite = "cnt-lem";
  const std::size_t N = B.rows, L = B.cols;
  RealLattice lat = RealLattice::from_rational(B);
  Real det = lat.det();
  Real c = supnorm_min(lat).c.approx;
  Rat R0 = Rat(ceil_rat(lower_threshold(L, det, c).eval(128).upper()));
  const std::string in = basis_text(B);
  MaxGrassmann mg = max_grassmann_sublattice(lat);
  std::vector<Record> rs;
  bool proj_ok = true;
  std::string proj_detail;
  for (Rat R : {R0, Rat(R0 * Rat(4, 3)), Rat(R0 * Rat(5, 3)), Rat(R0 * 2)}) {
    std::uint64_t n = count_cube(lat, R);
    rs.push_back(bound_record(suite, id, BoundKind::Lower, "lattice-count", in, R, n, bound_lower(L, det, c, R)));
    rs.push_back(
        bound_record(suite, id, BoundKind::Upper, "lattice-count", in, R, n, bound_upper(N, L, det, c, R, true)));
    std::uint64_t m = count_cube(mg.omega, R / Rat(static_cast<long>(L)));
    proj_ok = proj_ok && n >= m;
    proj_detail += (proj_detail.empty() ? "" : " ") + u64(n) + ">=" + u64(m);
  }
  Real hi = Real::sqrt_of(Rat(binomial(N, L))) * mg.det_omega.approx;
  bool det_ok = certified_le(mg.det_omega.approx, det) && certified_le(det, hi);
  Record d = check_record(suite, id, "sublattice-det", in, det_ok,
                          "det_Omega " + num(mg.det_omega.approx) + " det " + num(det) + " cap " + num(hi));
  d.exact = num(det);
  rs.push_back(d);
  Record p = check_record(suite, id, "projection-count", in, proj_ok, proj_detail);
  rs.push_back(p);
  return rs;
}

std::vector<NamedTask> cnt_lem_tasks(const SuiteConfig& cfg) {
  std::mt19937 rng(cfg.seed);
  std::vector<NamedTask> tasks;
  int attempts = 0;
  while (tasks.size() < 100 && attempts < 20000) {
    ++attempts;
    std::size_t N = 1 + rng() % 5, L = 1 + rng() % N;
    RatMat B = random_basis(rng, N, L, 9);
    RealLattice lat = RealLattice::from_rational(B);
    Real det = lat.det();
    if (upper_d(det) > 400 || upper_d(det) < 1e-9) continue;
    Real c = supnorm_min(lat).c.approx;
    Rat R0 = Rat(ceil_rat(lower_threshold(L, det, c).eval(128).upper()));
    if (upper_d(bound_upper(N, L, det, c, R0 * 2, true)) > 2e5) continue;
    std::string id = "lat-" + pad3(tasks.size() + 1);
    tasks.push_back({"cnt-lem", id, [B, id] { return lattice_task(B, id); }});
  }
  return tasks;
}

// ---------------------------------------------------------------- thm1

struct ModuleSpec {
  std::string id;
  OkModule M;
};

std::vector<ModuleSpec> thm1_modules() {
  std::vector<ModuleSpec> out;
  struct FieldCase {
    FieldPtr K;
    std::string tag;
    NfElement prime;
    std::vector<std::pair<std::size_t, std::size_t>> shapes;
  };
  auto Q = NumberField::rationals();
  auto K2 = NumberField::quadratic(2);
  auto K5 = NumberField::quadratic(5);
  std::vector<FieldCase> cases{
      {Q, "Q", NfElement::from_rat(Q, 2), {{1, 1}, {2, 1}, {2, 2}}},
      {K2, "Q2", NfElement::theta(K2), {{1, 1}, {2, 1}}},
      {K5, "Q5", NfElement::theta(K5), {{1, 1}, {2, 1}}},
  };
  for (const auto& fc : cases)
    for (auto [N, L] : fc.shapes)
      for (int which = 0; which < 2; ++which) {
        FracIdeal I = which == 0 ? FracIdeal::unit(fc.K) : FracIdeal::principal(fc.prime);
        NfElement one = NfElement::from_rat(fc.K, 1), zero = NfElement::from_rat(fc.K, 0);
        std::vector<PseudoElement> pb;
        if (L == 1) {
          pb.push_back({NfVec(N, one), I});
        } else {
          for (std::size_t k = 0; k < L; ++k) {
            NfVec y(N, zero);
            y[k] = one;
            pb.push_back({y, I});
          }
        }
        std::string id = fc.tag + "-N" + std::to_string(N) + "L" + std::to_string(L) + (which ? "-p" : "-O");
        out.push_back({id, OkModule(fc.K, N, pb)});
      }
  return out;
}

std::vector<NamedTask> thm1_tasks(const SuiteConfig& cfg) {
  std::vector<NamedTask> tasks;
  for (const auto& ms : thm1_modules()) {
    Real thr = thm1_threshold_for(ms.M);
    for (long f : {1L, 2L, 4L}) {
      Rat R = round_up_milli(thr, f);
      std::string id = ms.id + "-x" + std::to_string(f);
      OkModule M = ms.M;
      auto budget = cfg.budget;
      tasks.push_back({"thm1", id, [M, R, id, budget] {
                         return std::vector<Record>{record_from("thm1", thm1_lower(M, R, id, budget))};
                       }});
    }
  }
  return tasks;
}

// ---------------------------------------------------------------- main1 / main2

AlgebraPtr hamilton(long m) {
  auto K = NumberField::quadratic(m);
  auto mone = NfElement::from_rat(K, -1);
  return QuatAlgebra::create(K, mone, mone);
}

std::vector<NamedTask> main1_tasks(const SuiteConfig& cfg) {
  std::vector<NamedTask> tasks;
  for (long m : {2L, 5L}) {
    AlgebraPtr A = hamilton(m);
    QuatOrder O = QuatOrder::standard(A);
    auto one = QuatElement::scalar(A, Rat(1)), zero = QuatElement::scalar(A, Rat(0));
    std::vector<std::pair<std::string, DSubspace>> subs{
        {"axis", DSubspace::from_basis({{one}, {zero}})},
        {"diag", DSubspace::from_basis({{one}, {one}})},
    };
    for (const auto& [tag, Z] : subs) {
      const std::string base = "Q" + std::to_string(m) + "-" + tag;
      Real thr = main1_threshold_for(Z, O);
      for (long f : {1L, 2L}) {
        Rat R = round_up_milli(thr, f);
        std::string id = base + "-x" + std::to_string(f);
        auto budget = cfg.budget;
        tasks.push_back({"main1", id, [Z, O, R, id, budget] {
                           return std::vector<Record>{record_from(
                               "main1", thm_main1_lower(Z, O, R, CountMode::CertifiedLower, id, budget))};
                         }});
      }
      tasks.push_back({"main1", base, [Z, O, base, A] {
                         DetMZCheck d = det_MZ_check(Z, O);
                         std::string in = A->describe() + " Z=" + base;
                         Record disp = check_record("main1", base, "det-identity", in, d.displayed_holds,
                                                    "lattice " + num(d.lattice_det) + " formula " + num(d.displayed));
                         disp.exact = num(d.lattice_det);
                         Record corr =
                             check_record("main1", base, "det-identity-corrected", in, d.corrected_holds,
                                          "lattice " + num(d.lattice_det) + " formula " + num(d.corrected));
                         corr.exact = num(d.lattice_det);
                         return std::vector<Record>{disp, corr};
                       }});
    }
  }
  return tasks;
}

std::vector<NamedTask> main2_tasks(const SuiteConfig& cfg) {
  std::vector<NamedTask> tasks;
  for (long m : {2L, 5L}) {
    AlgebraPtr A = hamilton(m);
    for (long R : {1L, 2L}) {
      std::string id = "Q" + std::to_string(m) + "-N1-R" + std::to_string(R);
      auto budget = cfg.budget;
      tasks.push_back({"main2", id, [A, R, id, budget] {
                         std::vector<Record> rs{record_from("main2", thm_main2_upper(A, 1, Rat(R), id, budget))};
                         InclusionCheck c = bracket_inclusions(A, 1, Rat(R), budget);
                         std::string in = A->describe() + " N=1";
                         auto add = [&](const std::string& th, bool ok, std::uint64_t size, std::uint64_t miss,
                                        const std::string& what) {
                           Record r = check_record("main2", id, th, in, ok,
                                                   what + ": " + u64(miss) + " of " + u64(size) + " outside; |S_D|=" +
                                                       u64(c.sd));
                           r.R = std::to_string(R);
                           r.exact = u64(miss);
                           rs.push_back(r);
                         };
                         add("inclusion-lower", c.lower_displayed(), c.sk_s, c.miss_s, "S_K(R/s) in [S_D(R)]");
                         add("inclusion-lower-2s", c.lower_2s(), c.sk_2s, c.miss_2s, "S_K(R/2s) in [S_D(R)]");
                         add("inclusion-upper", c.upper(), c.sd, c.miss_t, "[S_D(R)] in S_K(R/t)");
                         return rs;
                       }});
    }
  }
  return tasks;
}

// ---------------------------------------------------------------- sunits

std::vector<Record> sunit_counts(const std::string& suite, const std::string& id, const SUnitContext& ctx,
                                 const LogLattice& L, const Rat& B) {
  std::uint64_t a = count_sunits_lattice(ctx, L, B);
  std::uint64_t b = count_sunits_direct(ctx, L, B);
  Record agree = check_record(suite, id, "pipeline-agreement", ctx.describe(), a == b,
                              "lattice " + u64(a) + " direct " + u64(b));
  agree.R = to_string(B);
  agree.exact = u64(a);
  SUnitBounds sb = lemma_sunit_bounds(ctx, L, B, Int(static_cast<unsigned long>(a)), id);
  return {agree, record_from(suite, sb.lower), record_from(suite, sb.upper)};
}

std::vector<Record> sunit_structure(const std::string& suite, const std::string& id, const SUnitContext& ctx,
                                    const LogLattice& L) {
  std::vector<Record> rs;
  const std::string in = ctx.describe();
  if (ctx.class_number()) {
    RegulatorCheck rc = regulator_bounds(ctx, L);
    auto add = [&](const std::string& th, bool ok, const Real& lhs, const Real& rhs, const char* rel) {
      Record r = check_record(suite, id, th, in, ok, num(lhs) + " " + rel + " " + num(rhs));
      r.exact = num(rc.RS);
      rs.push_back(r);
    };
    add("regulator-upper", rc.up_holds, rc.RS, rc.middle_up, "<=");
    add("regulator-upper-outer", rc.up_outer_holds, rc.RS, rc.outer_up, "<=");
    add("regulator-lower", rc.low_holds, rc.RS, rc.middle_low, ">=");
    add("regulator-lower-outer", rc.low_outer_holds, rc.RS, rc.outer_low, ">=");
  }
  if (L.rank() > 0) {
    // no nonzero lattice point strictly inside the cube of radius H
    Rat below = L.hsk.approx.eval(128).lower() * make_rat(999999999, 1000000000);
    std::uint64_t inside = below > 0 ? count_cube(L.lattice, below) : 0;
    bool ok = below > 0 && inside == 1;
    Record r = check_record(suite, id, "lattice-minimum", in, ok,
                            "H=" + num(L.hsk.approx) + " points below " + u64(inside));
    r.exact = num(L.hsk.approx);
    rs.push_back(r);
  }
  return rs;
}

std::vector<NamedTask> sunits_tasks(const SuiteConfig&) {
  auto Q = NumberField::rationals();
  std::vector<std::pair<std::string, SUnitContext>> ctxs{
      {"Q5-inf", SUnitContext::create(NumberField::quadratic(5), {})},
      {"Q2-inf", SUnitContext::create(NumberField::quadratic(2), {})},
      {"Q-2-3", SUnitContext::create(Q, {NfElement::from_rat(Q, 2), NfElement::from_rat(Q, 3)})},
  };
  const std::vector<Rat> grid{make_rat(1, 2), Rat(1), Rat(2), Rat(3), Rat(5)};
  std::vector<NamedTask> tasks;
  for (const auto& [tag, ctx] : ctxs) {
    auto L = std::make_shared<LogLattice>(build_log_lattice(ctx));
    for (const Rat& B : grid) {
      std::string id = tag + "-B" + to_string(B);
      tasks.push_back({"sunits", id, [ctx = ctx, L, B, id] { return sunit_counts("sunits", id, ctx, *L, B); }});
    }
    tasks.push_back({"sunits", tag, [ctx = ctx, L, tag = tag] { return sunit_structure("sunits", tag, ctx, *L); }});
  }
  return tasks;
}

// ---------------------------------------------------------------- ffield

std::vector<Record> curve_counts(const std::string& suite, const std::string& id, const CurveContext& c,
                                 const DivisorLattice& L, long B) {
  std::uint64_t a = count_supported_lattice(c, L, B);
  std::uint64_t b = count_supported_direct(c, B);
  Record agree = check_record(suite, id, "pipeline-agreement", c.describe(), a == b,
                              "lattice " + u64(a) + " direct " + u64(b));
  agree.R = std::to_string(B);
  agree.exact = u64(a);
  PCountBounds pb = lemma_pcount_bounds(c, L, B, Int(static_cast<unsigned long>(a)), id);
  return {agree, record_from(suite, pb.lower), record_from(suite, pb.upper)};
}

std::vector<Record> curve_structure(const std::string& suite, const std::string& id, const CurveContext& c,
                                    const DivisorLattice& L) {
  DivisorChecks d = divisor_checks(c, L);
  const std::string in = c.describe();
  const std::string sizes = "det^2=" + to_string(L.det_sq) + " n=" + std::to_string(c.n()) + " |J|=" + to_string(L.jxp);
  Record id1 = check_record(suite, id, "det-identity", in, d.det_formula, sizes);
  id1.exact = to_string(L.det_sq);
  Record id2 = check_record(suite, id, "det-sandwich", in, d.det_lower && d.det_upper, sizes);
  id2.exact = to_string(L.det_sq);
  Record id3 = check_record(suite, id, "divisor-minimum", in, d.min_norm_ok,
                            "min |x| = " + std::to_string(d.min_norm) + " |X(F_q)|=" + std::to_string(c.points().size()));
  id3.exact = std::to_string(d.min_norm);
  return {id1, id2, id3};
}

std::vector<NamedTask> ffield_tasks(const SuiteConfig&) {
  const CurvePoint inf{true, 0, 0};
  auto pt = [](long x, long y = 0) { return CurvePoint{false, x, y}; };
  std::vector<std::pair<std::string, CurveContext>> ctxs{
      {"P1-0-inf", CurveContext::projective_line(5, {pt(0), inf})},
      {"P1-0-1-inf", CurveContext::projective_line(5, {pt(0), pt(1), inf})},
      {"E5-3", CurveContext::elliptic(5, 1, 1, {inf, pt(0, 1), pt(0, 4)})},
  };
  std::vector<NamedTask> tasks;
  for (const auto& [tag, c] : ctxs) {
    auto L = std::make_shared<DivisorLattice>(build_divisor_lattice(c));
    for (long B : {1L, 2L, 3L, 4L, 6L}) {
      std::string id = tag + "-B" + std::to_string(B);
      tasks.push_back({"ffield", id, [c = c, L, B, id] { return curve_counts("ffield", id, c, *L, B); }});
    }
    tasks.push_back({"ffield", tag, [c = c, L, tag = tag] { return curve_structure("ffield", tag, c, *L); }});
  }
  return tasks;
}

std::vector<NamedTask> tasks_for(const std::string& name, const SuiteConfig& cfg) {
  if (name == "cnt-lem") return cnt_lem_tasks(cfg);
  if (name == "thm1") return thm1_tasks(cfg);
  if (name == "main1") return main1_tasks(cfg);
  if (name == "main2") return main2_tasks(cfg);
  if (name == "sunits") return sunits_tasks(cfg);
  if (name == "ffield") return ffield_tasks(cfg);
  fail(ErrorCode::InvalidArgument, "unknown suite '" + name + "' (cnt-lem, thm1, main1, main2, sunits, ffield, all)");
}

// value^root rational with a rational root-th root
std::optional<Rat> rational_value(const HeightValue& h) {
  if (!h.arch.exact || !h.arch.exact->is_rational()) return std::nullopt;
  Rat p = h.finite * h.arch.exact->a();
  if (p <= 0) return std::nullopt;
  Int n = p.get_num(), d = p.get_den(), rn, rd;
  const auto k = static_cast<unsigned long>(h.root);
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k) || !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return std::nullopt;
  return make_rat(rn, rd);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cnt-lem", "thm1", "main1", "main2", "sunits", "ffield"};
  return names;
}

bool is_suite(const std::string& name) {
  if (name == "all") return true;
  for (const auto& s : suite_names())
    if (s == name) return true;
  return false;
}

std::vector<Record> run_suite(const std::string& name, const SuiteConfig& cfg) {
  std::vector<NamedTask> tasks;
  if (name == "all") {
    for (const auto& s : suite_names()) {
      auto t = tasks_for(s, cfg);
      tasks.insert(tasks.end(), t.begin(), t.end());
    }
  } else {
    tasks = tasks_for(name, cfg);
  }
  return run_tasks(tasks, cfg.jobs);
}

std::vector<Record> count_instance(const Instance& I, const SuiteConfig& cfg, const std::optional<Rat>& Rover) {
  std::optional<Rat> R = Rover ? Rover : I.R;
  auto need_R = [&](const char* what) {
    if (!R) fail(ErrorCode::InvalidArgument, I.id + ": count needs " + std::string(what));
    return *R;
  };
  const std::string suite = "count";
  switch (I.kind) {
    case InstanceKind::Module: {
      OkModule M(I.field, I.ambient, I.pseudo_basis);
      return {record_from(suite, thm1_lower(M, need_R("R"), I.id, cfg.budget))};
    }
    case InstanceKind::Subspace: {
      DSubspace Z = DSubspace::from_basis(I.dbasis);
      QuatOrder O = QuatOrder::standard(I.algebra);
      auto mode = I.certified ? CountMode::CertifiedLower : CountMode::Exact;
      return {record_from(suite, thm_main1_lower(Z, O, need_R("R"), mode, I.id, cfg.budget))};
    }
    case InstanceKind::Main2:
      return {record_from(suite, thm_main2_upper(I.algebra, I.ambient, need_R("R"), I.id, cfg.budget))};
    case InstanceKind::SUnits: {
      SUnitContext ctx = SUnitContext::create(I.field, I.primes, I.units, I.class_number, I.weighted);
      LogLattice L = build_log_lattice(ctx);
      Rat B = need_R("B");
      std::uint64_t n = count_sunits_lattice(ctx, L, B);
      SUnitBounds sb = lemma_sunit_bounds(ctx, L, B, Int(static_cast<unsigned long>(n)), I.id);
      return {record_from(suite, sb.lower), record_from(suite, sb.upper)};
    }
    case InstanceKind::Curve: {
      CurveContext c = I.model == CurveModel::Genus0 ? CurveContext::projective_line(I.q, I.support)
                                                     : CurveContext::elliptic(I.q, I.a, I.b, I.support);
      Rat B = need_R("B");
      if (B.get_den() != 1 || !B.get_num().fits_slong_p()) fail(ErrorCode::InvalidArgument, I.id + ": B must be an integer");
      DivisorLattice L = build_divisor_lattice(c);
      long b = B.get_num().get_si();
      std::uint64_t n = count_supported_lattice(c, L, b);
      PCountBounds pb = lemma_pcount_bounds(c, L, b, Int(static_cast<unsigned long>(n)), I.id);
      return {record_from(suite, pb.lower), record_from(suite, pb.upper)};
    }
    case InstanceKind::Height:
    case InstanceKind::QuatHeight:
      break;
  }
  fail(ErrorCode::InvalidArgument,
       I.id + ": kind '" + instance_kind_name(I.kind) + "' has no count (module, main1, main2, sunits, curve)");
}

std::vector<Record> count_instances(const std::vector<Instance>& is, const SuiteConfig& cfg) {
  std::vector<NamedTask> tasks;
  for (const auto& I : is) tasks.push_back({"count", I.id, [I, cfg] { return count_instance(I, cfg); }});
  return run_tasks(tasks, cfg.jobs);
}

HeightText height_instance(const Instance& I, mpfr_prec_t prec) {
  HeightText t;
  t.id = I.id;
  HeightValue h;
  if (I.kind == InstanceKind::Height) {
    bool zero = true;
    for (const auto& x : I.vector) zero = zero && x.is_zero();
    if (zero && I.projective) fail(ErrorCode::Domain, I.id + ": the zero vector has no projective height");
    h = I.projective ? height_H(I.vector) : height_h(I.vector);
    t.kind = I.projective ? "H" : "h";
  } else if (I.kind == InstanceKind::QuatHeight) {
    h = height_hD(I.dvector);
    t.kind = "h_D";
  } else {
    fail(ErrorCode::InvalidArgument,
         I.id + ": kind '" + instance_kind_name(I.kind) + "' has no height (height, quat_height)");
  }
  t.exact = rational_value(h);
  t.finite = h.finite;
  t.root = h.root;
  t.ball = ball_text(h.value(), prec);
  return t;
}

std::string HeightText::line() const {
  if (exact) return to_string(*exact) + " (exact)";
  std::ostringstream s;
  s << ball.mid << " +/- " << ball.rad << " [" << ball.prec << " bits]  finite part " << to_string(finite)
    << ", root " << root;
  return s.str();
}

int verdict_exit_code(const std::vector<Record>& rs, std::size_t inconclusive_tolerance) {
  Tally t = tally(rs);
  if (t.violated > 0) return 1;
  if (t.inconclusive > inconclusive_tolerance) return 1;
  return 0;
}

}  // namespace hc
