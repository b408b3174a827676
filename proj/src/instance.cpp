#include "heightcount/instance.hpp"

#include "heightcount/error.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace hc {

const char* instance_kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::Height: return "height";
    case InstanceKind::QuatHeight: return "quat_height";
    case InstanceKind::Module: return "module";
    case InstanceKind::Subspace: return "main1";
    case InstanceKind::Main2: return "main2";
    case InstanceKind::SUnits: return "sunits";
    case InstanceKind::Curve: return "curve";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(trim(part));
  return out;
}

SourcePos pos_of(const YAML::Node& n) {
  const auto m = n.Mark();
  if (m.line < 0) return {};
  return {m.line + 1, m.column + 1};
}

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void error(const YAML::Node& n, const std::string& msg) const {
    SourcePos p = pos_of(n);
    std::ostringstream s;
    s << source_;
    if (p.line) s << ": line " << p.line << ", column " << p.column;
    s << ": " << msg;
    fail(ErrorCode::Parse, s.str());
  }

  // Re-throws library errors from inside a node with its position prepended.
  template <class F>
  auto guarded(const YAML::Node& n, const std::string& what, F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const Error& e) {
      const std::string m = e.what();
      if (e.code() == ErrorCode::Parse && m.rfind(source_ + ":", 0) == 0) throw;
      error(n, what + ": " + m);
    }
  }

  std::string scalar(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) error(n, "'" + key + "' must be a scalar");
    return n.Scalar();
  }

  long integer(const YAML::Node& n, const std::string& key) const {
    std::string s = scalar(n, key);
    Rat q = guarded(n, "'" + key + "'", [&] { return parse_rat(s); });
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) error(n, "'" + key + "' must be an integer");
    return q.get_num().get_si();
  }

  bool boolean(const YAML::Node& n, const std::string& key) const {
    std::string s = scalar(n, key);
    if (s == "true" || s == "yes") return true;
    if (s == "false" || s == "no") return false;
    error(n, "'" + key + "' must be true or false");
  }

  Rat rational(const YAML::Node& n, const std::string& key) const {
    std::string s = scalar(n, key);
    return guarded(n, "'" + key + "'", [&] { return parse_rat(s); });
  }

  FieldPtr field(const YAML::Node& n) const {
    if (n.IsScalar()) return guarded(n, "field", [&] { return parse_field(n.Scalar()); });
    if (!n.IsMap()) error(n, "field must be a name or a map with 'minpoly'");
    check_keys(n, {"minpoly", "basis", "name"});
    const YAML::Node mp = n["minpoly"];
    if (!mp || !mp.IsSequence() || mp.size() < 2) error(n, "field needs 'minpoly' (coefficients, constant first)");
    Poly f;
    for (const auto& c : mp) f.push_back(Int(integer(c, "minpoly")));
    const std::size_t d = f.size() - 1;
    std::vector<RatVec> basis;
    if (const YAML::Node b = n["basis"]) {
      if (!b.IsSequence() || b.size() != d) error(b, "basis needs " + std::to_string(d) + " rows");
      for (const auto& row : b) {
        if (!row.IsSequence() || row.size() != d) error(row, "basis row needs " + std::to_string(d) + " entries");
        RatVec r;
        for (const auto& x : row) r.push_back(rational(x, "basis"));
        basis.push_back(r);
      }
    } else {
      for (std::size_t i = 0; i < d; ++i) {
        RatVec r(d, Rat(0));
        r[i] = 1;
        basis.push_back(r);
      }
    }
    std::string name = n["name"] ? scalar(n["name"], "name") : "";
    return guarded(n, "field", [&] { return NumberField::create(f, basis, name); });
  }

  NfElement element(const FieldPtr& K, const YAML::Node& n, const std::string& key) const {
    if (n.IsScalar()) return guarded(n, "'" + key + "'", [&] { return parse_element(K, n.Scalar()); });
    if (!n.IsSequence()) error(n, "'" + key + "' entries must be numbers or coefficient lists");
    if (n.size() != static_cast<std::size_t>(K->degree()))
      error(n, "coefficient list needs " + std::to_string(K->degree()) + " entries");
    RatVec c;
    for (const auto& x : n) c.push_back(rational(x, key));
    return NfElement(K, c);
  }

  NfVec elements(const FieldPtr& K, const YAML::Node& n, const std::string& key) const {
    if (!n.IsSequence() || n.size() == 0) error(n, "'" + key + "' must be a non-empty list");
    NfVec v;
    for (const auto& x : n) v.push_back(element(K, x, key));
    return v;
  }

  QuatElement quat(const AlgebraPtr& A, const YAML::Node& n) const {
    if (n.IsSequence() && n.size() == 4) {
      std::array<NfElement, 4> c;
      for (int m = 0; m < 4; ++m) c[m] = element(A->field(), n[m], "quaternion");
      return QuatElement(A, c);
    }
    if (n.IsScalar()) return QuatElement::scalar(A, element(A->field(), n, "quaternion"));
    error(n, "quaternion must be a list of 4 components or a scalar");
  }

  DVec dvec(const AlgebraPtr& A, const YAML::Node& n, const std::string& key) const {
    if (!n.IsSequence() || n.size() == 0) error(n, "'" + key + "' must be a non-empty list of quaternions");
    DVec v;
    for (const auto& x : n) v.push_back(quat(A, x));
    return v;
  }

  void check_keys(const YAML::Node& n, std::initializer_list<const char*> allowed) const {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : n) {
      std::string k = kv.first.Scalar();
      if (!ok.count(k)) error(kv.first, "unknown key '" + k + "'");
    }
  }

  const YAML::Node need(const YAML::Node& n, const char* key) const {
    const YAML::Node v = n[key];
    if (!v) error(n, std::string("missing '") + key + "'");
    return v;
  }

  std::optional<Rat> radius(const YAML::Node& n) const {
    if (n["R"] && n["B"]) error(n, "give either 'R' or 'B'");
    for (const char* k : {"R", "B"})
      if (const YAML::Node v = n[k]) {
        Rat r = rational(v, k);
        if (r < 0) error(v, std::string("'") + k + "' must be non-negative");
        return r;
      }
    return std::nullopt;
  }

  AlgebraPtr algebra(Instance& I, const YAML::Node& n) const {
    NfElement a = element(I.field, need(n, "alpha"), "alpha");
    NfElement b = element(I.field, need(n, "beta"), "beta");
    return guarded(n, "algebra", [&] { return QuatAlgebra::create(I.field, a, b); });
  }

  Instance instance(const YAML::Node& n, std::size_t index) const {
    if (!n.IsMap()) error(n, "instance must be a map");
    Instance I;
    I.pos = pos_of(n);
    std::string kind = scalar(need(n, "kind"), "kind");
    I.id = n["id"] ? scalar(n["id"], "id") : kind + "-" + std::to_string(index + 1);
    I.R = radius(n);

    if (kind == "height") {
      I.kind = InstanceKind::Height;
      check_keys(n, {"id", "kind", "field", "vector", "height"});
      I.field = n["field"] ? field(n["field"]) : NumberField::rationals();
      I.vector = elements(I.field, need(n, "vector"), "vector");
      if (const YAML::Node h = n["height"]) {
        std::string s = scalar(h, "height");
        if (s != "H" && s != "h") error(h, "'height' must be H or h");
        I.projective = s == "H";
      }
    } else if (kind == "quat_height") {
      I.kind = InstanceKind::QuatHeight;
      check_keys(n, {"id", "kind", "field", "alpha", "beta", "vector"});
      I.field = field(need(n, "field"));
      I.algebra = algebra(I, n);
      I.dvector = dvec(I.algebra, need(n, "vector"), "vector");
    } else if (kind == "module") {
      I.kind = InstanceKind::Module;
      check_keys(n, {"id", "kind", "field", "ambient", "basis", "R"});
      I.field = n["field"] ? field(n["field"]) : NumberField::rationals();
      const YAML::Node b = need(n, "basis");
      if (!b.IsSequence() || b.size() == 0) error(b, "'basis' must be a non-empty list");
      for (const auto& e : b) {
        if (!e.IsMap()) error(e, "basis entries are maps with 'y' and optional 'ideal'");
        check_keys(e, {"y", "ideal"});
        PseudoElement pe;
        pe.y = elements(I.field, need(e, "y"), "y");
        if (const YAML::Node id = e["ideal"]) {
          NfVec gens = id.IsSequence() ? elements(I.field, id, "ideal") : NfVec{element(I.field, id, "ideal")};
          pe.ideal = guarded(id, "ideal", [&] { return FracIdeal::from_generators(I.field, gens); });
        } else {
          pe.ideal = FracIdeal::unit(I.field);
        }
        I.pseudo_basis.push_back(pe);
      }
      I.ambient = n["ambient"] ? static_cast<std::size_t>(integer(n["ambient"], "ambient"))
                               : I.pseudo_basis.front().y.size();
      for (std::size_t k = 0; k < I.pseudo_basis.size(); ++k)
        if (I.pseudo_basis[k].y.size() != I.ambient) error(b[k], "'y' length differs from 'ambient'");
    } else if (kind == "main1") {
      I.kind = InstanceKind::Subspace;
      check_keys(n, {"id", "kind", "field", "alpha", "beta", "basis", "R", "certified"});
      I.field = field(need(n, "field"));
      I.algebra = algebra(I, n);
      const YAML::Node b = need(n, "basis");
      if (!b.IsSequence() || b.size() == 0) error(b, "'basis' must be a non-empty list of vectors");
      std::vector<DVec> cols;
      for (const auto& c : b) cols.push_back(dvec(I.algebra, c, "basis"));
      I.ambient = cols.front().size();
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (cols[j].size() != I.ambient) error(b[j], "basis vectors must share one length");
      I.dbasis.assign(I.ambient, DVec(cols.size()));
      for (std::size_t i = 0; i < I.ambient; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) I.dbasis[i][j] = cols[j][i];
      if (n["certified"]) I.certified = boolean(n["certified"], "certified");
    } else if (kind == "main2") {
      I.kind = InstanceKind::Main2;
      check_keys(n, {"id", "kind", "field", "alpha", "beta", "ambient", "R"});
      I.field = field(need(n, "field"));
      I.algebra = algebra(I, n);
      long N = n["ambient"] ? integer(n["ambient"], "ambient") : 1;
      if (N < 1) error(n["ambient"], "'ambient' must be positive");
      I.ambient = static_cast<std::size_t>(N);
    } else if (kind == "sunits") {
      I.kind = InstanceKind::SUnits;
      check_keys(n, {"id", "kind", "field", "primes", "units", "class_number", "weighted", "B"});
      I.field = n["field"] ? field(n["field"]) : NumberField::rationals();
      if (const YAML::Node p = n["primes"]) {
        if (!p.IsSequence()) error(p, "'primes' must be a list");
        for (const auto& x : p) I.primes.push_back(element(I.field, x, "primes"));
      }
      if (const YAML::Node u = n["units"]) I.units = elements(I.field, u, "units");
      if (const YAML::Node h = n["class_number"]) I.class_number = integer(h, "class_number");
      if (const YAML::Node w = n["weighted"]) I.weighted = boolean(w, "weighted");
    } else if (kind == "curve") {
      I.kind = InstanceKind::Curve;
      check_keys(n, {"id", "kind", "q", "model", "a", "b", "support", "B"});
      I.q = integer(need(n, "q"), "q");
      std::string m = n["model"] ? scalar(n["model"], "model") : "genus0";
      if (m == "genus0" || m == "P1")
        I.model = CurveModel::Genus0;
      else if (m == "genus1" || m == "elliptic")
        I.model = CurveModel::Genus1;
      else
        error(n["model"], "'model' must be genus0 or genus1");
      if (n["a"]) I.a = integer(n["a"], "a");
      if (n["b"]) I.b = integer(n["b"], "b");
      const YAML::Node s = need(n, "support");
      if (!s.IsSequence() || s.size() == 0) error(s, "'support' must be a non-empty list of points");
      for (const auto& p : s) I.support.push_back(guarded(p, "support", [&] { return parse_point(scalar(p, "support")); }));
    } else {
      error(n["kind"], "unknown kind '" + kind + "' (height, quat_height, module, main1, main2, sunits, curve)");
    }
    return I;
  }

 private:
  std::string source_;
};

}  // namespace

FieldPtr parse_field(const std::string& spec) {
  std::string s = trim(spec);
  if (s == "Q" || s == "QQ") return NumberField::rationals();
  static const std::regex quad(R"(Q\(\s*sqrt\s*\(?\s*(-?\d+)\s*\)?\s*\))");
  std::smatch m;
  if (std::regex_match(s, m, quad)) {
    long r = std::stol(m[1].str());
    return NumberField::quadratic(r);
  }
  fail(ErrorCode::Parse, "unknown field '" + spec + "' (Q or Q(sqrt m))");
}

NfElement parse_element(const FieldPtr& K, const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() == 1) return NfElement::from_rat(K, parse_rat(parts[0]));
  if (parts.size() != static_cast<std::size_t>(K->degree()))
    fail(ErrorCode::Parse, "element '" + text + "' needs " + std::to_string(K->degree()) + " coefficients");
  RatVec c;
  for (const auto& p : parts) c.push_back(parse_rat(p));
  return NfElement(K, c);
}

CurvePoint parse_point(const std::string& text) {
  std::string s = trim(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s == "inf" || s == "infinity" || s == "O") return {true, 0, 0};
  auto parts = split(s, ',');
  auto to_long = [&](const std::string& p) {
    Rat q = parse_rat(p);
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) fail(ErrorCode::Parse, "point coordinate '" + p + "'");
    return q.get_num().get_si();
  };
  if (parts.size() == 1) return {false, to_long(parts[0]), 0};
  if (parts.size() == 2) return {false, to_long(parts[0]), to_long(parts[1])};
  fail(ErrorCode::Parse, "point '" + text + "' must be inf, x or x,y");
}

std::vector<Instance> parse_instances(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    std::ostringstream s;
    s << source;
    if (e.mark.line >= 0) s << ": line " << e.mark.line + 1 << ", column " << e.mark.column + 1;
    s << ": " << e.msg;
    fail(ErrorCode::Parse, s.str());
  }
  Parser p(source);
  if (!root || root.IsNull()) fail(ErrorCode::Parse, source + ": empty document");
  std::vector<Instance> out;
  try {
    if (root.IsMap() && root["instances"]) {
      const YAML::Node list = root["instances"];
      if (!list.IsSequence()) p.error(list, "'instances' must be a list");
      for (std::size_t i = 0; i < list.size(); ++i) out.push_back(p.instance(list[i], i));
    } else if (root.IsMap()) {
      out.push_back(p.instance(root, 0));
    } else {
      p.error(root, "expected a map with 'instances' or a single instance");
    }
  } catch (const YAML::Exception& e) {
    std::ostringstream s;
    s << source;
    if (e.mark.line >= 0) s << ": line " << e.mark.line + 1 << ", column " << e.mark.column + 1;
    s << ": " << e.msg;
    fail(ErrorCode::Parse, s.str());
  }
  std::set<std::string> ids;
  for (const auto& I : out)
    if (!ids.insert(I.id).second) fail(ErrorCode::Parse, source + ": duplicate instance id '" + I.id + "'");
  return out;
}

std::vector<Instance> load_instances(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instances(ss.str(), path);
}

}  // namespace hc
