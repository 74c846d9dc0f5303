#include "hadlab/io.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

namespace hadlab {

using nlohmann::json;

namespace {

std::string at(std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

json provenance_to_json(const Provenance& p) {
  json j{{"constructor", p.constructor}};
  if (!p.orders.empty()) j["orders"] = p.orders;
  if (!p.rows.empty()) j["rows"] = p.rows;
  if (p.master) {
    json eig = json::array();
    for (const auto& e : p.master->eigenphases) eig.push_back(phase_to_json(e));
    j["master"] = {{"eigenphases", eig}, {"exponents", p.master->exponents}};
  }
  return j;
}

Provenance provenance_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("phm-v1: provenance must be an object");
  Provenance p;
  try {
    if (j.contains("constructor")) p.constructor = j.at("constructor").get<std::string>();
    if (j.contains("orders")) p.orders = j.at("orders").get<std::vector<std::int64_t>>();
    if (j.contains("rows")) p.rows = j.at("rows").get<std::vector<std::vector<std::int64_t>>>();
    if (j.contains("master")) {
      MasterSpec spec;
      for (const auto& e : j.at("master").at("eigenphases")) spec.eigenphases.push_back(phase_from_json(e));
      spec.exponents = j.at("master").at("exponents").get<std::vector<double>>();
      p.master = std::move(spec);
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("phm-v1: malformed provenance: ") + e.what());
  }
  return p;
}

}  // namespace

Phase parse_turns(const std::string& text) {
  if (text.find('/') != std::string::npos) {
    const auto r = Rational::parse(text);
    if (!r) throw InvalidInput("cannot parse turn '" + text + "'");
    return Phase::turns(*r);
  }
  try {
    std::size_t used = 0;
    const double t = std::stod(text, &used);
    if (used != text.size()) throw InvalidInput("cannot parse turn '" + text + "'");
    if (t == std::floor(t) && std::abs(t) < 1e15) return Phase::turns(Rational{static_cast<std::int64_t>(t), 1});
    return Phase::turns(t);
  } catch (const std::logic_error&) {
    throw InvalidInput("cannot parse turn '" + text + "'");
  }
}

json phase_to_json(const Phase& p) {
  if (auto r = p.exact_turns()) return r->frac().str();
  if (p.kind() == Phase::Kind::turns) return p.turns_value();
  const cdouble z = p.value();
  return json::array({z.real(), z.imag()});
}

Phase phase_from_json(const json& v) {
  if (v.is_string()) return parse_turns(v.get<std::string>());
  if (v.is_number()) return Phase::turns(v.get<double>());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    const cdouble z(v[0].get<double>(), v[1].get<double>());
    if (std::abs(std::abs(z) - 1.0) > 1e-6) throw InvalidInput("phase is not unit-modulus");
    return Phase::cartesian(z / std::abs(z));
  }
  throw InvalidInput("unrecognized phase value");
}

json matrix_to_json(const PHMatrix& h, const std::optional<Provenance>& provenance) {
  json doc{{"format", "phm-v1"}, {"rows", h.rows()}, {"cols", h.cols()}};
  bool all_exact = true, any_cartesian = false;
  std::int64_t order = 1;
  for (const Phase& p : h.entries()) {
    if (auto r = p.exact_turns()) {
      if (order <= (1 << 20)) order = std::lcm(order, r->den);
    } else {
      all_exact = false;
    }
    any_cartesian = any_cartesian || p.kind() == Phase::Kind::cartesian;
  }
  json rows = json::array();
  if (all_exact && order <= (1 << 20)) {
    doc["representation"] = "butson";
    doc["butson_order"] = order;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < h.cols(); ++j) {
        const Rational r = h(i, j).exact_turns()->frac();
        row.push_back(r.num * (order / r.den));
      }
      rows.push_back(row);
    }
  } else {
    doc["representation"] = any_cartesian ? "cartesian" : "turns";
    for (std::size_t i = 0; i < h.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < h.cols(); ++j) {
        const Phase& p = h(i, j);
        if (any_cartesian) {
          const cdouble z = p.value();
          row.push_back(json::array({z.real(), z.imag()}));
        } else {
          row.push_back(phase_to_json(p));
        }
      }
      rows.push_back(row);
    }
  }
  doc["entries"] = rows;
  if (!h.label().empty()) doc["label"] = h.label();
  if (provenance) doc["provenance"] = provenance_to_json(*provenance);
  return doc;
}

MatrixDocument matrix_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("phm-v1: top level must be an object");
  if (!doc.contains("format") || doc["format"] != "phm-v1") throw InvalidInput("phm-v1: missing or wrong \"format\"");
  for (const char* key : {"rows", "cols"})
    if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<std::int64_t>() <= 0)
      throw InvalidInput(std::string("phm-v1: \"") + key + "\" must be a positive integer");
  const auto m = doc["rows"].get<std::size_t>(), n = doc["cols"].get<std::size_t>();
  if (!doc.contains("representation") || !doc["representation"].is_string())
    throw InvalidInput("phm-v1: missing \"representation\"");
  const std::string rep = doc["representation"].get<std::string>();
  if (rep != "butson" && rep != "turns" && rep != "cartesian")
    throw InvalidInput("phm-v1: unknown representation \"" + rep + "\"");
  std::int64_t order = 0;
  if (rep == "butson") {
    if (!doc.contains("butson_order") || !doc["butson_order"].is_number_integer() ||
        doc["butson_order"].get<std::int64_t>() < 1)
      throw InvalidInput("phm-v1: butson representation needs a positive integer \"butson_order\"");
    order = doc["butson_order"].get<std::int64_t>();
  }
  if (!doc.contains("entries") || !doc["entries"].is_array() || doc["entries"].size() != m)
    throw InvalidInput("phm-v1: \"entries\" must be an array of " + std::to_string(m) + " rows");

  std::vector<Phase> entries;
  entries.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    const json& row = doc["entries"][i];
    if (!row.is_array() || row.size() != n)
      throw InvalidInput("phm-v1: row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      const json& v = row[j];
      if (rep == "butson") {
        if (!v.is_number_integer()) throw InvalidInput("phm-v1: entry " + at(i, j) + " must be an integer exponent");
        entries.push_back(Phase::butson(v.get<std::int64_t>(), order));
      } else if (rep == "turns") {
        if (v.is_string()) {
          try {
            entries.push_back(parse_turns(v.get<std::string>()));
          } catch (const InvalidInput& e) {
            throw InvalidInput("phm-v1: entry " + at(i, j) + ": " + e.what());
          }
        } else if (v.is_number()) {
          const double t = v.get<double>();
          if (!(t >= 0.0 && t < 1.0)) throw InvalidInput("phm-v1: entry " + at(i, j) + " turn must lie in [0,1)");
          entries.push_back(Phase::turns(t));
        } else {
          throw InvalidInput("phm-v1: entry " + at(i, j) + " must be a \"p/q\" string or a number");
        }
      } else {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
          throw InvalidInput("phm-v1: entry " + at(i, j) + " must be a [re, im] pair");
        const cdouble z(v[0].get<double>(), v[1].get<double>());
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(std::abs(z) - 1.0) > 1e-6)
          throw InvalidInput("phm-v1: entry " + at(i, j) + " has modulus " + std::to_string(std::abs(z)) +
                             ", not 1 within 1e-6");
        entries.push_back(Phase::cartesian(z / std::abs(z)));
      }
    }
  }
  std::string label;
  if (doc.contains("label") && doc["label"].is_string()) label = doc["label"].get<std::string>();
  MatrixDocument out{PHMatrix(m, n, std::move(entries), label), std::nullopt};
  if (doc.contains("provenance")) out.provenance = provenance_from_json(doc["provenance"]);
  return out;
}

MatrixDocument read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path.string() + ": invalid JSON: " + e.what());
  }
  return matrix_from_json(doc);
}

void write_matrix_file(const std::filesystem::path& path, const PHMatrix& h, const std::optional<Provenance>& provenance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << matrix_to_json(h, provenance).dump(1) << "\n";
}

}  // namespace hadlab
