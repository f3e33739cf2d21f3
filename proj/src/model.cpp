#include "rigidity/model.hpp"

#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rigidity/resources.hpp"

namespace rigidity {

using nlohmann::json;

namespace {

const char* kSchemaHint =
    "expected {name, dim, sublattices, constraints:[{label, terms:[{sublattice, "
    "offset, coeff, spin_sign}]}], metadata?}";

template <typename T>
T require(const json& obj, const char* field, const char* where) {
  if (!obj.contains(field))
    throw input_error(std::string("schema violation: missing field '") + field + "' in " +
                      where + "; " + kSchemaHint);
  try {
    return obj.at(field).get<T>();
  } catch (const json::exception&) {
    throw input_error(std::string("schema violation: field '") + field + "' in " + where +
                      " has the wrong type");
  }
}

}  // namespace

std::vector<Diagnostic> validate(const SpinModel& model) {
  std::vector<Diagnostic> out;
  auto error = [&out](std::string msg) { out.push_back({Diagnostic::kError, std::move(msg)}); };

  if (model.dim < 1 || model.dim > 6)
    error("dimension out of supported range: dim = " + std::to_string(model.dim) +
          ", supported 1..6");
  if (model.sublattices < 1)
    error("sublattice count must be >= 1, got " + std::to_string(model.sublattices));
  if (model.constraints.empty()) error("constraint list is empty");

  for (std::size_t f = 0; f < model.constraints.size(); ++f) {
    const auto& family = model.constraints[f];
    std::string where = "family " + std::to_string(f) + " ('" + family.label + "')";
    if (family.terms.empty()) {
      error(where + ": no terms");
      continue;
    }
    std::set<std::pair<int, Offset>> seen;
    for (std::size_t t = 0; t < family.terms.size(); ++t) {
      const auto& term = family.terms[t];
      std::string at = where + ", term " + std::to_string(t);
      if (term.sublattice < 0 || term.sublattice >= model.sublattices)
        error(at + ": sublattice index " + std::to_string(term.sublattice) +
              " out of range [0, " + std::to_string(model.sublattices) + ")");
      if (static_cast<int>(term.offset.size()) != model.dim)
        error(at + ": offset has " + std::to_string(term.offset.size()) +
              " components, expected " + std::to_string(model.dim));
      if (term.coeff == 0.0) error(at + ": coefficient is zero");
      if (term.spin_sign != 1 && term.spin_sign != -1)
        error(at + ": spin_sign must be +1 or -1, got " + std::to_string(term.spin_sign));
      if (!seen.insert({term.sublattice, term.offset}).second)
        error(at + ": duplicate (sublattice, offset) pair within the family");
    }
  }
  return out;
}

SpinModel parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw input_error(std::string("schema violation: top level; ") + kSchemaHint);

  SpinModel model;
  model.name = require<std::string>(doc, "name", "top level");
  model.dim = require<int>(doc, "dim", "top level");
  model.sublattices = require<int>(doc, "sublattices", "top level");
  if (!doc.contains("constraints") || !doc.at("constraints").is_array())
    throw input_error(std::string("schema violation: missing or non-array field 'constraints'; ") +
                      kSchemaHint);
  if (doc.at("constraints").empty())
    throw input_error("schema violation: field 'constraints' is empty (a model needs at least one family)");

  int f = 0;
  for (const auto& jfam : doc.at("constraints")) {
    std::string where = "constraints[" + std::to_string(f) + "]";
    ConstraintFamily family;
    family.label = require<std::string>(jfam, "label", where.c_str());
    if (!jfam.contains("terms") || !jfam.at("terms").is_array())
      throw input_error("schema violation: missing or non-array field 'terms' in " + where);
    for (const auto& jterm : jfam.at("terms")) {
      ConstraintTerm term;
      term.sublattice = require<int>(jterm, "sublattice", where.c_str());
      term.offset = require<Offset>(jterm, "offset", where.c_str());
      term.coeff = require<double>(jterm, "coeff", where.c_str());
      term.spin_sign = require<int>(jterm, "spin_sign", where.c_str());
      family.terms.push_back(std::move(term));
    }
    model.constraints.push_back(std::move(family));
    ++f;
  }
  if (doc.contains("metadata")) {
    if (!doc.at("metadata").is_object())
      throw input_error("schema violation: field 'metadata' must be an object of strings");
    for (const auto& [key, value] : doc.at("metadata").items()) {
      if (!value.is_string())
        throw input_error("schema violation: metadata value for '" + key + "' must be a string");
      model.metadata[key] = value.get<std::string>();
    }
  }

  auto diagnostics = validate(model);
  for (const auto& d : diagnostics)
    if (d.level == Diagnostic::kError)
      throw input_error("invariant violation: " + d.message);
  return model;
}

std::string serialize(const SpinModel& model) {
  json doc;
  doc["name"] = model.name;
  doc["dim"] = model.dim;
  doc["sublattices"] = model.sublattices;
  json families = json::array();
  for (const auto& family : model.constraints) {
    json jfam;
    jfam["label"] = family.label;
    json terms = json::array();
    for (const auto& term : family.terms) {
      json jterm;
      jterm["sublattice"] = term.sublattice;
      jterm["offset"] = term.offset;
      jterm["coeff"] = term.coeff;
      jterm["spin_sign"] = term.spin_sign;
      terms.push_back(jterm);
    }
    jfam["terms"] = terms;
    families.push_back(jfam);
  }
  doc["constraints"] = families;
  if (!model.metadata.empty()) doc["metadata"] = model.metadata;
  return doc.dump(2) + "\n";
}

const std::vector<std::string>& builtin_model_names() {
  static const std::vector<std::string> names = {"j1j2_square", "square_anisotropic_nnn",
                                                 "pyrochlore"};
  return names;
}

SpinModel builtin_model(const std::string& name) {
  const char* text = resources::builtin_model_json(name);
  if (!text) {
    std::string known;
    for (const auto& n : builtin_model_names()) known += " " + n;
    throw input_error("unknown builtin model '" + name + "'; available:" + known);
  }
  return parse_model(text);
}

}  // namespace rigidity
