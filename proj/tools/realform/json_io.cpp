#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace realform::cli {

namespace {

cplx parse_entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ParseError("matrix entries must be numbers or [re, im] pairs");
}

void dump_into(const json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        dump_into(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays ([re, im] pairs) stay on one line.
      const bool flat = j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      out += flat ? "[" : "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat ? ", " : ",\n";
        if (!flat) out += pad;
        dump_into(j[i], out, depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

CMatrix parse_matrix(const json& rows, int k) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != k) throw ParseError("matrix must have k rows");
  CMatrix M(k, k);
  for (int r = 0; r < k; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != k) throw ParseError("matrix row must have k entries");
    for (int c = 0; c < k; ++c) {
      M(r, c) = parse_entry(rows[r][c]);
      if (!std::isfinite(M(r, c).real()) || !std::isfinite(M(r, c).imag())) throw ParseError("non-finite entry");
    }
  }
  return M;
}

InputDocument parse_input(const json& doc) {
  if (!doc.is_object()) throw ParseError("input must be a JSON object");
  if (!doc.contains("matrices") || !doc["matrices"].is_array() || doc["matrices"].empty())
    throw ParseError("input needs a non-empty \"matrices\" array");
  InputDocument in;
  if (doc.contains("k")) {
    if (!doc["k"].is_number_integer()) throw ParseError("\"k\" must be an integer");
    in.k = doc["k"].get<int>();
  } else {
    in.k = static_cast<int>(doc["matrices"][0].size());
  }
  if (in.k < 2) throw ParseError("k must be at least 2");
  for (const auto& m : doc["matrices"]) in.matrices.push_back(parse_matrix(m, in.k));
  if (doc.contains("options")) {
    const auto& opt = doc["options"];
    if (!opt.is_object()) throw ParseError("\"options\" must be an object");
    if (opt.contains("tolerances")) in.tolerances = opt["tolerances"];
  }
  return in;
}

InputDocument read_input(const std::string& path) { return parse_input(read_json(path)); }

void apply_tolerances(Tolerances& tol, const json& overrides) {
  if (overrides.is_null()) return;
  if (!overrides.is_object()) throw ParseError("tolerances must be an object");
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    if (!it.value().is_number()) throw ParseError("tolerance " + it.key() + " must be a number");
    const double v = it.value().get<double>();
    if (!(v > 0)) throw ParseError("tolerance " + it.key() + " must be positive");
    const std::string& key = it.key();
    if (key == "deg_tol") tol.deg_tol = v;
    else if (key == "eig_tol") tol.eig_tol = v;
    else if (key == "sep_tol") tol.sep_tol = v;
    else if (key == "angle_tol") tol.angle_tol = v;
    else if (key == "rank_tol") tol.rank_tol = v;
    else if (key == "cr_tol") tol.cr_tol = v;
    else if (key == "cert_tol") tol.cert_tol = v;
    else if (key == "cons_tol") tol.cons_tol = v;
    else throw ParseError("unknown tolerance " + key);
  }
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix& M) {
  json rows = json::array();
  for (int r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < M.cols(); ++c) row.push_back(to_json(M(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json input_document(int k, const std::vector<CMatrix>& Ms) {
  json doc;
  doc["k"] = k;
  doc["matrices"] = json::array();
  for (const auto& M : Ms) doc["matrices"].push_back(to_json(M));
  return doc;
}

json to_json(const Decision& d) {
  json out;
  out["verdict"] = to_string(d.verdict.answer);
  out["method"] = to_string(d.verdict.method);
  out["multiplicity"] = d.verdict.multiplicity ? json(to_string(*d.verdict.multiplicity)) : json(nullptr);
  if (d.certificate.gamma) {
    out["gamma"] = to_json(*d.certificate.gamma);
    out["residual"] = d.certificate.residual;
  } else {
    out["gamma"] = nullptr;
    out["residual"] = nullptr;
  }
  json conds = json::array();
  for (const auto& c : d.certificate.conditions) {
    json jc;
    jc["name"] = c.name;
    jc["value"] = to_json(c.value);
    if (c.partner) jc["partner"] = to_json(*c.partner);
    jc["requirement"] = to_string(c.requirement);
    jc["pass"] = c.pass;
    conds.push_back(jc);
  }
  out["conditions"] = conds;
  out["diagnostics"] = d.certificate.diagnostics;
  return out;
}

json to_json(const SpectralClass& sc, const EigenSystem& es) {
  json out;
  out["compatible"] = sc.compatible;
  out["kind"] = to_string(sc.kind);
  out["generic"] = sc.generic;
  out["line_angles"] = sc.line_angles;
  json lams = json::array();
  for (const auto& l : es.eigenvalues) lams.push_back(to_json(l));
  out["eigenvalues"] = lams;
  json labels = json::array();
  for (auto l : sc.labels) labels.push_back(to_string(l));
  out["labels"] = labels;
  json pairing = json::array();
  for (auto [i, j] : sc.pairing) pairing.push_back(json::array({i, j}));
  out["pairing"] = pairing;
  return out;
}

std::string dump(const json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += "\n";
  return out;
}

}  // namespace realform::cli
