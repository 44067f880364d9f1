#include "curvforge/json_io.hpp"

#include <json.hpp>

#include <utility>

namespace curvforge {

namespace {

using Json = nlohmann::ordered_json;

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonParseError(std::string("invalid JSON: ") + e.what());
  }
}

int read_int(const Json& node, const std::string& path, long lo, long hi) {
  if (!node.is_number_integer()) {
    throw JsonParseError(path + " must be an integer");
  }
  const long value = node.get<long>();
  if (value < lo || value > hi) {
    throw JsonParseError(path + " = " + std::to_string(value) +
                         " is out of range [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  }
  return static_cast<int>(value);
}

Rational read_rational(const Json& node, const std::string& path) {
  if (!node.is_string()) {
    throw JsonParseError(path + " must be a rational string \"p\" or \"p/q\"");
  }
  try {
    return parse_rational(node.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw JsonParseError(path + ": " + e.what());
  }
}

const Json& member(const Json& node, const char* key, const std::string& path) {
  if (!node.is_object() || !node.contains(key)) {
    throw JsonParseError(path + " must be an object with \"" +
                         std::string(key) + "\"");
  }
  return node.at(key);
}

Json terms_to_json(const Jet& jet) {
  Json terms = Json::array();
  for (const auto& term : jet.terms()) {
    Json entry;
    entry["exps"] = jet.exponents(term);
    entry["v"] = to_string(term.coeff);
    terms.push_back(std::move(entry));
  }
  return terms;
}

Jet terms_from_json(const Json& node, int vars, int order,
                    const std::string& path) {
  if (!node.is_array()) throw JsonParseError(path + " must be an array");
  Jet jet(vars, order);
  for (std::size_t n = 0; n < node.size(); ++n) {
    const std::string term_path = path + "[" + std::to_string(n) + "]";
    const Json& exps_node = member(node[n], "exps", term_path);
    if (!exps_node.is_array() ||
        exps_node.size() != static_cast<std::size_t>(vars)) {
      throw JsonParseError(term_path + ".exps must list " +
                           std::to_string(vars) + " exponents");
    }
    std::vector<int> exps(vars);
    int degree = 0;
    for (int v = 0; v < vars; ++v) {
      exps[v] = read_int(exps_node[v],
                         term_path + ".exps[" + std::to_string(v) + "]", 0,
                         Jet::kMaxOrder);
      degree += exps[v];
    }
    if (degree > order) {
      throw JsonParseError(term_path + " has degree " + std::to_string(degree) +
                           ", beyond the declared order " +
                           std::to_string(order));
    }
    Rational coeff = read_rational(member(node[n], "v", term_path),
                                   term_path + ".v");
    jet = jet + Jet::monomial(vars, order, exps, std::move(coeff));
  }
  return jet;
}

}  // namespace

std::string jet_to_json(const Jet& jet) {
  Json doc;
  doc["m"] = jet.vars();
  doc["order"] = jet.order();
  doc["terms"] = terms_to_json(jet);
  return doc.dump(2) + "\n";
}

Jet jet_from_json(const std::string& text) {
  const Json doc = parse_document(text);
  const int vars = read_int(member(doc, "m", "document"), "m", 1, Jet::kMaxVars);
  const int order =
      read_int(member(doc, "order", "document"), "order", 0, Jet::kMaxOrder);
  return terms_from_json(member(doc, "terms", "document"), vars, order,
                         "terms");
}

std::string tensor_to_json(const CurvatureOp& a) {
  Json doc;
  doc["m"] = a.dim();
  Json entries = Json::array();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        for (int l = 0; l < a.dim(); ++l) {
          const Rational& value = a.at(i, j, k, l);
          if (sgn(value) == 0) continue;
          Json entry;
          entry["i"] = i + 1;
          entry["j"] = j + 1;
          entry["k"] = k + 1;
          entry["l"] = l + 1;
          entry["v"] = to_string(value);
          entries.push_back(std::move(entry));
        }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

RawTensor tensor_from_json(const std::string& text) {
  const Json doc = parse_document(text);
  const int dim = read_int(member(doc, "m", "document"), "m", 1, 32);
  const Json& entries = member(doc, "entries", "document");
  if (!entries.is_array()) throw JsonParseError("entries must be an array");
  const std::size_t n = static_cast<std::size_t>(dim) * dim * dim * dim;
  RawTensor out{dim, std::vector<Rational>(n)};
  std::vector<bool> seen(n, false);
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string path = "entries[" + std::to_string(e) + "]";
    const int i = read_int(member(entries[e], "i", path), path + ".i", 1, dim);
    const int j = read_int(member(entries[e], "j", path), path + ".j", 1, dim);
    const int k = read_int(member(entries[e], "k", path), path + ".k", 1, dim);
    const int l = read_int(member(entries[e], "l", path), path + ".l", 1, dim);
    const std::size_t slot =
        (((static_cast<std::size_t>(i - 1) * dim + (j - 1)) * dim + (k - 1)) *
         dim) +
        (l - 1);
    if (seen[slot]) {
      throw JsonParseError(path + " repeats index (" + std::to_string(i) +
                           "," + std::to_string(j) + "," + std::to_string(k) +
                           "," + std::to_string(l) + ")");
    }
    seen[slot] = true;
    out.entries[slot] = read_rational(member(entries[e], "v", path),
                                      path + ".v");
  }
  return out;
}

std::string connection_to_json(const Connection& nabla) {
  Json doc;
  doc["m"] = nabla.dim();
  doc["order"] = nabla.order();
  Json gamma = Json::array();
  for (int i = 0; i < nabla.dim(); ++i)
    for (int j = i; j < nabla.dim(); ++j)
      for (int k = 0; k < nabla.dim(); ++k) {
        const Jet& jet = nabla.christoffel(i, j, k);
        if (jet.is_zero()) continue;
        Json entry;
        entry["i"] = i + 1;
        entry["j"] = j + 1;
        entry["k"] = k + 1;
        entry["poly"] = terms_to_json(jet);
        gamma.push_back(std::move(entry));
      }
  doc["gamma"] = std::move(gamma);
  return doc.dump(2) + "\n";
}

Connection connection_from_json(const std::string& text) {
  const Json doc = parse_document(text);
  const int dim = read_int(member(doc, "m", "document"), "m", 1, Jet::kMaxVars);
  const int order =
      read_int(member(doc, "order", "document"), "order", 0, Jet::kMaxOrder);
  const Json& gamma_node = member(doc, "gamma", "document");
  if (!gamma_node.is_array()) throw JsonParseError("gamma must be an array");

  std::vector<Jet> gamma(static_cast<std::size_t>(dim) * dim * dim,
                         Jet(dim, order));
  std::vector<bool> seen(gamma.size(), false);
  for (std::size_t e = 0; e < gamma_node.size(); ++e) {
    const std::string path = "gamma[" + std::to_string(e) + "]";
    const int i = read_int(member(gamma_node[e], "i", path), path + ".i", 1,
                           dim);
    const int j = read_int(member(gamma_node[e], "j", path), path + ".j", 1,
                           dim);
    const int k = read_int(member(gamma_node[e], "k", path), path + ".k", 1,
                           dim);
    if (i > j) {
      throw JsonParseError(path + " must store the lower pair with i <= j");
    }
    const std::size_t slot =
        (static_cast<std::size_t>(i - 1) * dim + (j - 1)) * dim + (k - 1);
    if (seen[slot]) {
      throw JsonParseError(path + " repeats index (" + std::to_string(i) +
                           "," + std::to_string(j) + "," + std::to_string(k) +
                           ")");
    }
    seen[slot] = true;
    Jet poly = terms_from_json(member(gamma_node[e], "poly", path), dim, order,
                               path + ".poly");
    const std::size_t mirror =
        (static_cast<std::size_t>(j - 1) * dim + (i - 1)) * dim + (k - 1);
    gamma[mirror] = poly;
    gamma[slot] = std::move(poly);
  }
  try {
    return Connection(dim, order, std::move(gamma));
  } catch (const std::invalid_argument& e) {
    throw JsonParseError(std::string("gamma: ") + e.what());
  }
}

}  // namespace curvforge
