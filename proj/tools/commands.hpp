#pragma once

#include <curvforge/curvature_algebra.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace curvforge::cli {

using Json = nlohmann::ordered_json;

// One verified property (or expected negative finding) inside a Report.
//   pass    - the property holds
//   fail    - the property is violated; the process exits 1
//   witness - the mathematically expected negative answer, with evidence;
//             not a failure
struct CheckEntry {
  enum class Status { pass, fail, witness };

  std::string name;
  Status status = Status::pass;
  std::optional<int> order_checked;
  std::optional<Json> witness;
};

struct Report {
  std::string command;
  std::optional<std::uint64_t> seed;
  int m = 0;
  std::optional<int> order;
  std::vector<CheckEntry> checks;
  Json data = Json::object();

  bool failed() const;
};

// Deterministic dump: fixed key order, two-space indent, trailing newline.
std::string report_to_string(const Report& report);

// 0 when no entry failed, 1 otherwise (witnesses are expected answers).
int exit_code(const Report& report);

// "none" or a comma list of weyl|sym|alt. Throws std::invalid_argument.
ComponentMask parse_mask(const std::string& text);
std::string mask_to_string(const ComponentMask& mask);

enum class RealizeMode { linear, ricci_constant, projective };
RealizeMode parse_mode(const std::string& text);  // throws invalid_argument

// Generates a seeded operator supported on the masked components, writes it
// to `out` (inline in the report when absent) and summarizes its
// decomposition.
Report cmd_gen(std::uint64_t seed, int m, const ComponentMask& mask,
               const std::optional<std::string>& out);

// Validates a tensor file: curvature identities, decomposition and
// reconstruction, and the Ricci trace law of the splitting map on the
// operator's own Ricci components.
Report cmd_check(const std::string& path);

// Builds a connection realizing the tensor in the requested mode, writes it
// to `out` (inline when absent), and verifies the mode's guarantee.
Report cmd_realize(const std::string& path, RealizeMode mode, int order,
                   const std::optional<std::string>& out);

// Audits a connection file: curvature identities, trace identities, the
// parallel-volume equivalence, and the second Bianchi identity.
Report cmd_verify(const std::string& path);

// Realizes one seeded operator per component mask and reports the eight-row
// verdict table: seven realizable rows and the purely-antisymmetric-Ricci
// obstruction.
Report cmd_table(std::uint64_t seed, int m, int order);

}  // namespace curvforge::cli
