#pragma once

#include "heightcount/funcfield.hpp"
#include "heightcount/modules.hpp"
#include "heightcount/quaternion.hpp"
#include "heightcount/sunits.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hc {

enum class InstanceKind { Height, QuatHeight, Module, Subspace, Main2, SUnits, Curve };
const char* instance_kind_name(InstanceKind k);

struct SourcePos {
  int line = 0, column = 0;  // 1-based; 0 when unknown
};

struct Instance {
  std::string id;
  InstanceKind kind = InstanceKind::Height;
  SourcePos pos;

  FieldPtr field;
  // height
  NfVec vector;
  bool projective = true;  // H, or h = H(1, x)
  // quaternion kinds
  AlgebraPtr algebra;
  DVec dvector;
  DMat dbasis;  // N x L, columns span Z
  std::size_t ambient = 0;
  bool certified = false;
  // module
  std::vector<PseudoElement> pseudo_basis;
  // sunits
  std::vector<NfElement> primes, units;
  std::optional<long> class_number;
  bool weighted = false;
  // curve
  long q = 0, a = 0, b = 0;
  CurveModel model = CurveModel::Genus0;
  std::vector<CurvePoint> support;

  std::optional<Rat> R;  // radius (R or B)
};

// Parses a YAML document holding `instances:` (a list) or a single instance map.
// Errors carry "line L, column C" of the offending node.
std::vector<Instance> parse_instances(const std::string& text, const std::string& source = "<input>");
std::vector<Instance> load_instances(const std::string& path);

// field specs: "Q", "Q(sqrt m)"
FieldPtr parse_field(const std::string& spec);
// "a", "a/b" or "x, y" power-basis coefficients separated by commas
NfElement parse_element(const FieldPtr& K, const std::string& text);
// "inf", "x" or "x,y"
CurvePoint parse_point(const std::string& text);

}  // namespace hc
