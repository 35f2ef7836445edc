#include "linf/io.hpp"

#include "linf/error.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace linf::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

void expect_keys(const Json& j, std::initializer_list<const char*> required, std::initializer_list<const char*> optional,
                 const std::string& where) {
  if (!j.is_object()) malformed(where + ": expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    if (!j.contains(k)) malformed(where + ": missing field '" + k + "'");
    allowed.insert(k);
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) malformed(where + ": unknown field '" + k + "'");
}

std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) malformed(where + ": expected a string");
  return j.get<std::string>();
}

int get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) malformed(where + ": expected an integer");
  return j.get<int>();
}

Rational get_rational(const Json& j, const std::string& where) {
  if (!j.is_string()) malformed(where + ": coefficient must be a string");
  return parse_rational(j.get<std::string>());
}

const Json& get_array(const Json& j, const std::string& where) {
  if (!j.is_array()) malformed(where + ": expected an array");
  return j;
}

int label_index(const GradedSpace& g, const std::string& label, const std::string& where) {
  const auto i = g.index_of(label);
  if (!i) malformed(where + ": unknown generator '" + label + "'");
  return static_cast<int>(*i);
}

Json result_json(const SparseVector& v, const GradedSpace& target) {
  std::vector<std::pair<std::string, Rational>> entries;
  for (const auto& [i, c] : v) entries.emplace_back(target.label(static_cast<size_t>(i)), c);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Json out = Json::array();
  for (const auto& [l, c] : entries) out.push_back({{"coeff", format_rational(c)}, {"dst", l}});
  return out;
}

// Λ-form entries of a cochain, sorted by (arity, args).
std::vector<std::pair<std::vector<std::string>, SparseVector>> lambda_entries(const Cochain& c,
                                                                              const LInftyAlgebra& source) {
  const Degrees s = source.shifted_degrees();
  std::vector<std::pair<std::vector<std::string>, SparseVector>> out;
  for (const auto& [m, v] : c.values()) {
    std::vector<std::string> args;
    for (int i : m) args.push_back(source.space.label(static_cast<size_t>(i)));
    out.emplace_back(std::move(args), lambda_value(c, s, m));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
  });
  return out;
}

Json reference(const Json& j, const std::filesystem::path& base, std::filesystem::path& where) {
  if (j.is_string()) {
    const auto file = base / j.get<std::string>();
    where = file.parent_path();
    return read_json(file.string());
  }
  where = base;
  return j;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

}  // namespace

Json components_to_json(const Cochain& c, const LInftyAlgebra& source, const LInftyAlgebra& target) {
  Json out = Json::array();
  for (const auto& [args, v] : lambda_entries(c, source))
    out.push_back({{"args", args}, {"arity", args.size()}, {"result", result_json(v, target.space)}});
  return out;
}

Cochain components_from_json(const Json& j, const LInftyAlgebra& source, const LInftyAlgebra& target,
                             int shifted_degree) {
  Cochain out;
  const Degrees s = source.shifted_degrees();
  std::set<Monomial> seen;
  for (const auto& e : get_array(j, "components")) {
    expect_keys(e, {"arity", "args", "result"}, {}, "component");
    const int k = get_int(e["arity"], "arity");
    std::vector<std::string> args;
    std::vector<int> word;
    int in_degree = 0;
    for (const auto& a : get_array(e["args"], "args")) {
      args.push_back(get_string(a, "args"));
      word.push_back(label_index(source.space, args.back(), "args"));
      in_degree += source.space.degree(static_cast<size_t>(word.back()));
    }
    if (k < 1 || k != static_cast<int>(word.size())) malformed("component (" + join(args) + "): arity does not match args");
    if (k > source.truncation) malformed("component (" + join(args) + "): arity exceeds the truncation");
    Monomial sorted = word;
    std::sort(sorted.begin(), sorted.end());
    if (!seen.insert(sorted).second) malformed("component (" + join(args) + ") given twice");
    SparseVector value;
    for (const auto& r : get_array(e["result"], "result")) {
      expect_keys(r, {"dst", "coeff"}, {}, "result");
      const std::string dst = get_string(r["dst"], "dst");
      const int t = label_index(target.space, dst, "dst");
      const Rational c = get_rational(r["coeff"], "coeff");
      const int expected = in_degree + 1 - k + shifted_degree;
      if (!is_zero(c) && target.space.degree(static_cast<size_t>(t)) != expected)
        throw Error(ErrorKind::ShapeMismatch, "arity " + std::to_string(k) + " on (" + join(args) + ") has output '" + dst +
                                                  "' of degree " + std::to_string(target.space.degree(static_cast<size_t>(t))) +
                                                  ", expected " + std::to_string(expected));
      add_to(value, t, c);
    }
    add_lambda_value(out, s, word, value);
  }
  return out;
}

Json algebra_to_json(const LInftyAlgebra& g) {
  Json gens = Json::array();
  for (const auto& b : g.space.basis()) gens.push_back({{"degree", b.degree}, {"label", b.label}});
  Json differential = Json::array(), brackets = Json::array();
  std::vector<std::tuple<std::string, std::string, Rational>> d;
  for (const auto& [args, v] : lambda_entries(g.structure, g)) {
    if (args.size() == 1) {
      for (const auto& [i, c] : v) d.emplace_back(args[0], g.space.label(static_cast<size_t>(i)), c);
      continue;
    }
    brackets.push_back({{"args", args}, {"arity", args.size()}, {"result", result_json(v, g.space)}});
  }
  std::sort(d.begin(), d.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  for (const auto& [src, dst, c] : d) differential.push_back({{"coeff", format_rational(c)}, {"dst", dst}, {"src", src}});
  return {{"kind", "algebra"},       {"name", g.name},          {"truncation", g.truncation},
          {"generators", gens},      {"differential", differential}, {"brackets", brackets}};
}

LInftyAlgebra algebra_from_json(const Json& j, const std::filesystem::path& base) {
  std::filesystem::path where;
  const Json doc = reference(j, base, where);
  expect_keys(doc, {"kind", "name", "truncation", "generators"}, {"differential", "brackets"}, "algebra");
  if (get_string(doc["kind"], "kind") != "algebra") malformed("expected kind 'algebra'");
  const int n = get_int(doc["truncation"], "truncation");
  if (n < 1) malformed("truncation must be positive");
  std::vector<BasisElement> elements;
  std::set<std::string> labels;
  for (const auto& e : get_array(doc["generators"], "generators")) {
    expect_keys(e, {"label", "degree"}, {}, "generator");
    elements.push_back({get_string(e["label"], "label"), get_int(e["degree"], "degree")});
    if (elements.back().label.empty()) malformed("empty generator label");
    if (!labels.insert(elements.back().label).second) malformed("duplicate generator '" + elements.back().label + "'");
  }
  LInftyAlgebra g{get_string(doc["name"], "name"), GradedSpace(elements), n, Cochain{}};
  Json components = Json::array();
  if (doc.contains("differential")) {
    std::map<std::string, Json> by_src;
    for (const auto& e : get_array(doc["differential"], "differential")) {
      expect_keys(e, {"src", "dst", "coeff"}, {}, "differential entry");
      const std::string src = get_string(e["src"], "src");
      auto [it, fresh] = by_src.emplace(src, Json{{"arity", 1}, {"args", {src}}, {"result", Json::array()}});
      it->second["result"].push_back({{"dst", e["dst"]}, {"coeff", e["coeff"]}});
    }
    for (auto& [src, c] : by_src) components.push_back(std::move(c));
  }
  if (doc.contains("brackets"))
    for (const auto& e : get_array(doc["brackets"], "brackets")) {
      if (e.is_object() && e.contains("arity") && e["arity"] == 1) malformed("arity-1 operations belong in 'differential'");
      components.push_back(e);
    }
  g.structure = components_from_json(components, g, g, 1);
  return g;
}

Json morphism_to_json(const LInftyMorphism& f) {
  return {{"kind", "morphism"},
          {"source", algebra_to_json(f.source)},
          {"target", algebra_to_json(f.target)},
          {"components", components_to_json(f.components, f.source, f.target)}};
}

LInftyMorphism morphism_from_json(const Json& j, const std::filesystem::path& base) {
  std::filesystem::path where;
  const Json doc = reference(j, base, where);
  expect_keys(doc, {"kind", "source", "target", "components"}, {}, "morphism");
  if (get_string(doc["kind"], "kind") != "morphism") malformed("expected kind 'morphism'");
  LInftyMorphism f{algebra_from_json(doc["source"], where), algebra_from_json(doc["target"], where), Cochain{}};
  if (f.source.truncation != f.target.truncation) throw Error(ErrorKind::TruncationMismatch, "source and target truncations differ");
  f.components = components_from_json(doc["components"], f.source, f.target, 0);
  return f;
}

Json gauge_to_json(const LInftyAlgebra& source, const LInftyAlgebra& target, const Cochain& h) {
  return {{"kind", "gauge"},
          {"source", algebra_to_json(source)},
          {"target", algebra_to_json(target)},
          {"components", components_to_json(h, source, target)}};
}

GaugeDocument gauge_from_json(const Json& j, const std::filesystem::path& base) {
  std::filesystem::path where;
  const Json doc = reference(j, base, where);
  expect_keys(doc, {"kind", "source", "target", "components"}, {}, "gauge");
  if (get_string(doc["kind"], "kind") != "gauge") malformed("expected kind 'gauge'");
  GaugeDocument g{algebra_from_json(doc["source"], where), algebra_from_json(doc["target"], where), Cochain{}};
  if (g.source.truncation != g.target.truncation) throw Error(ErrorKind::TruncationMismatch, "source and target truncations differ");
  g.gauge = components_from_json(doc["components"], g.source, g.target, -1);
  return g;
}

Json certificate_to_json(const HomotopyCertificate& c) {
  return {{"kind", "certificate"},
          {"from", morphism_to_json(c.from)},
          {"to", morphism_to_json(c.to)},
          {"gauge", components_to_json(c.gauge, c.from.source, c.from.target)}};
}

HomotopyCertificate certificate_from_json(const Json& j, const std::filesystem::path& base) {
  std::filesystem::path where;
  const Json doc = reference(j, base, where);
  expect_keys(doc, {"kind", "from", "to", "gauge"}, {}, "certificate");
  if (get_string(doc["kind"], "kind") != "certificate") malformed("expected kind 'certificate'");
  HomotopyCertificate c{morphism_from_json(doc["from"], where), morphism_from_json(doc["to"], where), Cochain{}};
  c.gauge = components_from_json(doc["gauge"], c.from.source, c.from.target, -1);
  if (!c.verify()) throw Error(ErrorKind::InvalidCertificate, "gauge_action(from, gauge) != to");
  return c;
}

Json read_json(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) malformed("cannot read '" + path + "'");
    buffer << in.rdbuf();
  }
  try {
    return Json::parse(buffer.str());
  } catch (const Json::exception& e) {
    malformed(path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace linf::io
