#pragma once

#include "curvforge/connection.hpp"
#include "curvforge/curvature_algebra.hpp"
#include "curvforge/jet.hpp"
#include "curvforge/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace curvforge {

// Malformed interchange document; the message names the offending field.
class JsonParseError : public std::runtime_error {
 public:
  explicit JsonParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// All encodings use 1-based indices and rationals as canonical "p" / "p/q"
// strings (never JSON numbers: exactness must survive the round trip).
// Serialization is deterministic: fixed key order, entries and terms in
// their canonical sort order, two-space indentation.

// {"m":…, "order":…, "terms":[{"exps":[e1..em], "v":"p/q"}, …]}
std::string jet_to_json(const Jet& jet);
Jet jet_from_json(const std::string& text);

// {"m":…, "entries":[{"i":…,"j":…,"k":…,"l":…,"v":"p/q"}, …]}, sparse.
// Reading returns raw data so the caller can run validate_curvature and
// report identity violations instead of dying on them.
struct RawTensor {
  int dim;
  std::vector<Rational> entries;
};
std::string tensor_to_json(const CurvatureOp& a);
RawTensor tensor_from_json(const std::string& text);

// {"m":…, "order":…, "gamma":[{"i":…,"j":…,"k":…,"poly":[terms]}, …]}
// with i <= j stored once (lower-index symmetry implied), zero entries
// omitted.
std::string connection_to_json(const Connection& nabla);
Connection connection_from_json(const std::string& text);

}  // namespace curvforge
