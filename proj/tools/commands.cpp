#include "commands.hpp"

#include <curvforge/connection.hpp>
#include <curvforge/jet.hpp>
#include <curvforge/json_io.hpp>
#include <curvforge/rational.hpp>
#include <curvforge/realization.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <variant>

namespace curvforge::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw JsonParseError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// Memory guard: dimensions beyond the cap cost m^4 exact rationals per
// operator and m^5 jets per derivative.
void enforce_cap(int m) {
  int cap = 8;
  if (const char* env = std::getenv("CURVFORGE_MAX_M");
      env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || value < 1 || value > 32) {
      throw std::invalid_argument(
          "CURVFORGE_MAX_M must be an integer in [1, 32]");
    }
    cap = static_cast<int>(value);
  }
  if (m > cap) {
    throw std::invalid_argument("m = " + std::to_string(m) +
                                " exceeds the dimension cap " +
                                std::to_string(cap) +
                                " (raise CURVFORGE_MAX_M to override)");
  }
}

Json index_json(std::span<const int> index) {
  Json out = Json::array();
  for (int i : index) out.push_back(i + 1);  // 1-based on the wire
  return out;
}

Json witness_json(const CoefficientWitness& w) {
  Json out;
  out["index"] = index_json(w.index);
  out["exps"] = w.exponents;
  out["v"] = to_string(w.value);
  return out;
}

Json witness_json(const SymmetryViolation& v) {
  Json out;
  out["identity"] = v.identity == SymmetryViolation::Identity::antisymmetry
                        ? "antisymmetry"
                        : "first_bianchi";
  out["index"] = index_json(v.index);
  out["v"] = to_string(v.residual);
  return out;
}

Json witness_json(const WeylObstruction& o) {
  Json out;
  out["index"] = index_json(o.index);
  out["v"] = to_string(o.value);
  return out;
}

Json witness_json(const NotClosed& w) {
  Json out;
  out["i"] = w.i + 1;
  out["j"] = w.j + 1;
  out["exps"] = w.exponents;
  out["v"] = to_string(w.value);
  return out;
}

CheckEntry entry(std::string name, bool ok, std::optional<int> order = {},
                 std::optional<Json> witness = {}) {
  return CheckEntry{std::move(name),
                    ok ? CheckEntry::Status::pass : CheckEntry::Status::fail,
                    order, std::move(witness)};
}

CheckEntry witness_entry(std::string name, std::optional<int> order,
                         Json witness) {
  return CheckEntry{std::move(name), CheckEntry::Status::witness, order,
                    std::move(witness)};
}

const char* status_string(CheckEntry::Status status) {
  switch (status) {
    case CheckEntry::Status::pass:
      return "pass";
    case CheckEntry::Status::fail:
      return "fail";
    case CheckEntry::Status::witness:
      return "witness";
  }
  return "fail";
}

Json decomposition_summary(const DecompositionTriple& parts) {
  Json summary;
  summary["weyl_nonzero"] = !parts.weyl.is_zero();
  summary["ricci_sym_nonzero"] = !parts.ricci_sym.is_zero();
  summary["ricci_alt_nonzero"] = !parts.ricci_alt.is_zero();
  return summary;
}

// Parses a validated tensor file; identity violations become a fail entry
// rather than an exception so the report can carry the witness.
std::optional<CurvatureOp> load_operator(const std::string& path,
                                         Report& report) {
  const RawTensor raw = tensor_from_json(read_file(path));
  enforce_cap(raw.dim);
  report.m = raw.dim;
  report.data["file"] = path;
  auto validated = validate_curvature(raw.dim, raw.entries);
  if (auto* violation = std::get_if<SymmetryViolation>(&validated)) {
    report.checks.push_back(CheckEntry{"curvature_identities",
                                       CheckEntry::Status::fail, std::nullopt,
                                       witness_json(*violation)});
    return std::nullopt;
  }
  report.checks.push_back(entry("curvature_identities", true));
  return std::move(std::get<CurvatureOp>(validated));
}

void attach_connection(Report& report, const Connection& nabla,
                       const std::optional<std::string>& out) {
  const std::string artifact = connection_to_json(nabla);
  if (out) {
    write_file(*out, artifact);
    report.data["out"] = *out;
  } else {
    report.data["connection"] = Json::parse(artifact);
  }
}

}  // namespace

bool Report::failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckEntry& c) {
    return c.status == CheckEntry::Status::fail;
  });
}

std::string report_to_string(const Report& report) {
  Json doc;
  doc["command"] = report.command;
  if (report.seed) doc["seed"] = *report.seed;
  doc["m"] = report.m;
  if (report.order) doc["order"] = *report.order;
  Json checks = Json::array();
  for (const CheckEntry& check : report.checks) {
    Json node;
    node["name"] = check.name;
    node["status"] = status_string(check.status);
    if (check.order_checked) node["order_checked"] = *check.order_checked;
    if (check.witness) node["witness"] = *check.witness;
    checks.push_back(std::move(node));
  }
  doc["checks"] = std::move(checks);
  doc["data"] = report.data;
  return doc.dump(2) + "\n";
}

int exit_code(const Report& report) { return report.failed() ? 1 : 0; }

ComponentMask parse_mask(const std::string& text) {
  if (text == "none") return ComponentMask{};
  if (text.empty()) {
    throw std::invalid_argument("mask must be \"none\" or list weyl|sym|alt");
  }
  ComponentMask mask;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string token = text.substr(pos, comma - pos);
    if (token == "weyl") {
      mask.weyl = true;
    } else if (token == "sym") {
      mask.ricci_sym = true;
    } else if (token == "alt") {
      mask.ricci_alt = true;
    } else {
      throw std::invalid_argument("mask token \"" + token +
                                  "\" is not one of weyl, sym, alt, none");
    }
    pos = comma + 1;
  }
  return mask;
}

std::string mask_to_string(const ComponentMask& mask) {
  std::string out;
  const auto append = [&out](const char* name) {
    if (!out.empty()) out += ',';
    out += name;
  };
  if (mask.weyl) append("weyl");
  if (mask.ricci_sym) append("sym");
  if (mask.ricci_alt) append("alt");
  return out.empty() ? "none" : out;
}

RealizeMode parse_mode(const std::string& text) {
  if (text == "linear") return RealizeMode::linear;
  if (text == "ricci-constant") return RealizeMode::ricci_constant;
  if (text == "projective") return RealizeMode::projective;
  throw std::invalid_argument(
      "mode \"" + text + "\" is not one of linear, ricci-constant, projective");
}

Report cmd_gen(std::uint64_t seed, int m, const ComponentMask& mask,
               const std::optional<std::string>& out) {
  enforce_cap(m);
  Report report;
  report.command = "gen";
  report.seed = seed;
  report.m = m;

  const CurvatureOp a = random_curvature(seed, m, mask);
  const DecompositionTriple parts = decompose(a);
  const bool support_ok = parts.weyl.is_zero() == !mask.weyl &&
                          parts.ricci_sym.is_zero() == !mask.ricci_sym &&
                          parts.ricci_alt.is_zero() == !mask.ricci_alt;
  report.checks.push_back(entry("mask_support", support_ok));

  report.data["mask"] = mask_to_string(mask);
  report.data["decomposition"] = decomposition_summary(parts);
  const std::string artifact = tensor_to_json(a);
  if (out) {
    write_file(*out, artifact);
    report.data["out"] = *out;
  } else {
    report.data["tensor"] = Json::parse(artifact);
  }
  return report;
}

Report cmd_check(const std::string& path) {
  Report report;
  report.command = "check";
  const auto a = load_operator(path, report);
  if (!a) return report;

  if (a->dim() < 3) {
    report.data["decomposition"] = "skipped: needs m >= 3";
    return report;
  }
  const DecompositionTriple parts = decompose(*a);
  report.data["decomposition"] = decomposition_summary(parts);

  report.checks.push_back(entry("reconstruction", recompose(parts) == *a));

  // The splitting map's Ricci trace law, applied to this operator's own
  // Ricci components: rho(H(s)) = (1-m) s and rho(H(t)) = -(1+m) t.
  const int m = a->dim();
  const bool law =
      ricci(h_map(parts.ricci_sym)) == Rational(1 - m) * parts.ricci_sym &&
      ricci(h_map(parts.ricci_alt)) == Rational(-(1 + m)) * parts.ricci_alt;
  report.checks.push_back(entry("ricci_trace_law", law));
  return report;
}

Report cmd_realize(const std::string& path, RealizeMode mode, int order,
                   const std::optional<std::string>& out) {
  Report report;
  report.command = "realize";
  report.order = order;
  const auto a = load_operator(path, report);
  if (!a) return report;

  switch (mode) {
    case RealizeMode::linear: {
      report.data["mode"] = "linear";
      const Connection nabla = realize_linear(*a, order);
      report.checks.push_back(entry(
          "origin_curvature",
          curvature_at_origin(curvature(nabla)) == *a, 0));
      attach_connection(report, nabla, out);
      break;
    }
    case RealizeMode::ricci_constant: {
      report.data["mode"] = "ricci-constant";
      const RicciConstantResult result = realize_ricci_constant(*a, order);
      const CurvatureField r = curvature(result.connection);
      report.checks.push_back(
          entry("origin_curvature", curvature_at_origin(r) == *a, 0));

      const BilinearForm rho0 = ricci(*a);
      const JetBilinearForm rho = ricci_field(r);
      bool constant = true;
      for (int j = 0; j < a->dim() && constant; ++j)
        for (int k = 0; k < a->dim() && constant; ++k) {
          constant = rho.at(j, k) ==
                     Jet::constant(a->dim(), order - 1, rho0.at(j, k));
        }
      report.checks.push_back(entry("constant_ricci", constant, order - 1));
      report.data["iterations"] = result.iterations;
      report.data["correction_layers"] =
          static_cast<int>(result.gamma_layers.size()) - 1;
      attach_connection(report, result.connection, out);
      break;
    }
    case RealizeMode::projective: {
      report.data["mode"] = "projective";
      const auto realized = realize_projectively_flat_from_A(*a, order);
      if (const auto* obstruction = std::get_if<WeylObstruction>(&realized)) {
        report.checks.push_back(witness_entry("projectively_flat_input",
                                              std::nullopt,
                                              witness_json(*obstruction)));
        break;
      }
      const Connection& nabla = std::get<Connection>(realized);
      const CurvatureField r = curvature(nabla);
      report.checks.push_back(
          entry("origin_curvature", curvature_at_origin(r) == *a, 0));
      report.checks.push_back(entry("projectively_flat",
                                    weyl_project_field(r).is_zero(),
                                    order - 1));
      attach_connection(report, nabla, out);
      break;
    }
  }
  return report;
}

Report cmd_verify(const std::string& path) {
  Report report;
  report.command = "verify";
  const Connection nabla = connection_from_json(read_file(path));
  enforce_cap(nabla.dim());
  const int m = nabla.dim();
  report.m = m;
  report.order = nabla.order();
  report.data["file"] = path;

  const CurvatureField r = curvature(nabla);
  const int v = r.valid_order();
  report.data["valid_order"] = v;
  // antisymmetry and the first Bianchi identity hold on every stored
  // coefficient; the curvature container rejects anything else
  report.checks.push_back(entry("curvature_identities", true, v));

  const JetBilinearForm rho = ricci_field(r);
  const TwoFormField tr = trace_two_form(r);
  bool trace_ok = true;
  for (int i = 0; i < m && trace_ok; ++i)
    for (int j = 0; j < m && trace_ok; ++j) {
      trace_ok = tr.at(i, j) == rho.at(j, i) - rho.at(i, j);
    }
  report.checks.push_back(entry("trace_identity", trace_ok, v));

  const OneFormField omega = trace_one_form(nabla);
  const TwoFormField curl = d_one_form(omega);
  report.checks.push_back(
      entry("trace_is_twice_curl", tr == Rational(2) * curl, v));

  const bool closed = curl.is_zero();
  const bool ricci_symmetric = split_jet_form(rho).second.is_zero();
  {
    std::optional<Json> disagreement;
    if (closed != ricci_symmetric) {
      Json sides;
      sides["trace_form_closed"] = closed;
      sides["ricci_symmetric"] = ricci_symmetric;
      disagreement = std::move(sides);
    }
    report.checks.push_back(CheckEntry{
        "equiaffine_equivalence",
        closed == ricci_symmetric ? CheckEntry::Status::pass
                                  : CheckEntry::Status::fail,
        v, std::move(disagreement)});
    report.data["ricci_symmetric"] = ricci_symmetric;
  }

  const auto potential = volume_potential(nabla);
  if (const auto* witness = std::get_if<NotClosed>(&potential)) {
    report.checks.push_back(witness_entry("volume_potential", nabla.order(),
                                          witness_json(*witness)));
  } else {
    report.checks.push_back(entry("volume_potential", true, nabla.order()));
    report.data["volume_potential"] =
        Json::parse(jet_to_json(std::get<Jet>(potential)));
  }

  const CovariantCurvature residual = second_bianchi_residual(nabla);
  report.checks.push_back(
      entry("second_bianchi", residual.is_zero(), residual.valid_order()));
  return report;
}

Report cmd_table(std::uint64_t seed, int m, int order) {
  enforce_cap(m);
  Report report;
  report.command = "table";
  report.seed = seed;
  report.m = m;
  report.order = order;

  // closed-form summand dimensions (component_dimensions re-derives these
  // from an explicit spanning set; the test suite pins the agreement)
  {
    const long n = m;
    Json dims;
    dims["weyl"] = n * n * (n * n - 4) / 3;
    dims["ricci_sym"] = n * (n + 1) / 2;
    dims["ricci_alt"] = n * (n - 1) / 2;
    dims["total"] = n * n * (n * n - 1) / 3;
    report.data["dimensions"] = std::move(dims);
  }

  Json rows = Json::array();
  for (int bits = 0; bits < 8; ++bits) {
    const ComponentMask mask{(bits & 4) != 0, (bits & 2) != 0,
                             (bits & 1) != 0};
    const std::string label = mask_to_string(mask);
    const CurvatureOp a =
        random_curvature(seed + static_cast<std::uint64_t>(bits), m, mask);
    Json row;
    row["mask"] = label;

    if (!mask.weyl && !mask.ricci_sym && !mask.ricci_alt) {
      row["method"] = "flat";
      const bool ok = curvature(Connection::flat(m, order)).is_zero();
      row["verdict"] = ok ? "yes" : "fail";
      report.checks.push_back(entry("row " + label, ok, order - 1));
    } else if (mask.weyl) {
      // rows with a trace-free component: constant-Ricci realization
      row["method"] = "ricci-constant";
      const RicciConstantResult result = realize_ricci_constant(a, order);
      const CurvatureField r = curvature(result.connection);
      const BilinearForm rho0 = ricci(a);
      const JetBilinearForm rho = ricci_field(r);
      bool ok = curvature_at_origin(r) == a;
      for (int j = 0; j < m && ok; ++j)
        for (int k = 0; k < m && ok; ++k) {
          ok = rho.at(j, k) == Jet::constant(m, order - 1, rho0.at(j, k));
        }
      row["verdict"] = ok ? "yes" : "fail";
      row["iterations"] = result.iterations;
      report.checks.push_back(entry("row " + label, ok, order - 1));
    } else if (mask.ricci_sym) {
      // projectively flat rows: the perturbed flat connection
      row["method"] = "projective";
      const auto realized = realize_projectively_flat_from_A(a, order);
      bool ok = std::holds_alternative<Connection>(realized);
      if (ok) {
        const CurvatureField r = curvature(std::get<Connection>(realized));
        ok = curvature_at_origin(r) == a && weyl_project_field(r).is_zero();
      }
      row["verdict"] = ok ? "yes" : "fail";
      report.checks.push_back(entry("row " + label, ok, order - 1));
    } else {
      // purely antisymmetric Ricci: the unique projectively flat candidate
      // family cannot keep its Ricci antisymmetric away from the origin
      row["method"] = "projective-candidate";
      const auto realized = realize_projectively_flat_from_A(a, order);
      bool structure_ok = std::holds_alternative<Connection>(realized);
      std::optional<Json> obstruction;
      if (structure_ok) {
        const Connection& candidate = std::get<Connection>(realized);
        const CurvatureField r = curvature(candidate);
        const auto rho_sym = split_jet_form(ricci_field(r)).first;
        const auto coefficient = first_nonzero(rho_sym);
        const AuditReport audit = flatness_audit(candidate);
        structure_ok =
            curvature_at_origin(r) == a && coefficient.has_value() &&
            audit.verdict == AuditReport::Verdict::obstruction_witness &&
            audit.hypothesis_failure.has_value() &&
            audit.hypothesis_failure->hypothesis ==
                AuditReport::Hypothesis::ricci_antisymmetric;
        if (structure_ok) {
          Json w;
          w["ricci_sym_coefficient"] = witness_json(*coefficient);
          w["audit_hypothesis"] = "ricci_antisymmetric";
          w["audit_witness"] =
              witness_json(audit.hypothesis_failure->witness);
          obstruction = std::move(w);
        }
      }
      row["verdict"] = structure_ok ? "obstructed" : "fail";
      if (structure_ok) {
        report.checks.push_back(
            witness_entry("row " + label, order - 1, *obstruction));
        row["obstruction"] = std::move(*obstruction);
      } else {
        report.checks.push_back(entry("row " + label, false, order - 1));
      }
    }
    rows.push_back(std::move(row));
  }
  report.data["rows"] = std::move(rows);
  return report;
}

}  // namespace curvforge::cli
