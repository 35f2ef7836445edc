#include "linf/cli.hpp"

#include "linf/acceptance.hpp"
#include "linf/convolution.hpp"
#include "linf/cylinder.hpp"
#include "linf/error.hpp"
#include "linf/fixtures.hpp"
#include "linf/inversion.hpp"
#include "linf/io.hpp"
#include "linf/quillen.hpp"
#include "linf/transfer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>

namespace linf::cli {

namespace {

using io::Json;
namespace fs = std::filesystem;

struct Options {
  int truncation = 4;
  bool truncation_set = false;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::optional<int> t_degree;
};

struct Report {
  std::string command;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  std::optional<Json> document;
  std::optional<Json> certificate;
};

struct Malformed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path base_of(const std::string& path) { return path == "-" ? fs::current_path() : fs::path(path).parent_path(); }

LInftyAlgebra cut(const LInftyAlgebra& g, const Options& o) { return o.truncation_set ? g.with_truncation(o.truncation) : g; }

LInftyMorphism cut(const LInftyMorphism& f, const Options& o) {
  if (!o.truncation_set) return f;
  return {f.source.with_truncation(o.truncation), f.target.with_truncation(o.truncation),
          f.components.arities(1, o.truncation)};
}

// A builtin fixture name, or a document path ("-" for stdin).
Json load(const std::string& path) { return io::read_json(path); }

std::string kind_of(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw Error(ErrorKind::ParseError, "document without 'kind'");
  return j["kind"].get<std::string>();
}

LInftyAlgebra load_algebra(const std::string& path, const Options& o) {
  if (!fs::exists(path))
    if (auto g = fixtures::by_name(path, o.truncation)) return *g;
  return cut(io::algebra_from_json(load(path), base_of(path)), o);
}

LInftyMorphism load_morphism(const std::string& path, const Options& o) {
  return cut(io::morphism_from_json(load(path), base_of(path)), o);
}

io::GaugeDocument load_gauge(const std::string& path, const Options& o) {
  auto g = io::gauge_from_json(load(path), base_of(path));
  if (o.truncation_set) g = {cut(g.source, o), cut(g.target, o), g.gauge.arities(1, o.truncation)};
  return g;
}

bool same_algebra(const LInftyAlgebra& a, const LInftyAlgebra& b) {
  return a.space == b.space && a.structure == b.structure && a.truncation == b.truncation;
}

void require_same(const LInftyAlgebra& a, const LInftyAlgebra& b, const std::string& what) {
  if (!same_algebra(a, b)) throw Error(ErrorKind::ShapeMismatch, what + ": algebras '" + a.name + "' and '" + b.name + "' differ");
}

std::string where(const LInftyAlgebra& g, const Monomial& m) {
  return "arity " + std::to_string(m.size()) + " on (" + monomial_label(g.space, m) + ")";
}

void structure_violations(Report& r, const LInftyAlgebra& g, const std::string& prefix = "") {
  for (const auto& m : check_structure(g).violations) r.violations.push_back(prefix + "D^2 != 0 at " + where(g, m));
}

void morphism_violations(Report& r, const LInftyMorphism& f) {
  structure_violations(r, f.source, "source: ");
  structure_violations(r, f.target, "target: ");
  if (r.violations.empty())
    for (const auto& m : check_morphism(f).violations) r.violations.push_back("MC fails at " + where(f.source, m));
}

Json inversion_json(const LInftyMorphism& inverse, const std::vector<const HomotopyCertificate*>& certs) {
  Json list = Json::array();
  for (const auto* c : certs) list.push_back(io::certificate_to_json(*c));
  return {{"kind", "inversion"}, {"inverse", io::morphism_to_json(inverse)}, {"certificates", list}};
}

void cmd_check(Report& r, const std::string& path, const Options& o) {
  if (!fs::exists(path) && fixtures::by_name(path, o.truncation)) {
    structure_violations(r, load_algebra(path, o));
    if (r.violations.empty()) r.notes.push_back("algebra is valid");
    return;
  }
  const Json doc = load(path);
  const std::string kind = kind_of(doc);
  if (kind == "algebra") {
    structure_violations(r, load_algebra(path, o));
  } else if (kind == "morphism") {
    morphism_violations(r, load_morphism(path, o));
  } else if (kind == "gauge") {
    const auto g = load_gauge(path, o);
    structure_violations(r, g.source, "source: ");
    structure_violations(r, g.target, "target: ");
  } else if (kind == "certificate") {
    try {
      io::certificate_from_json(doc, base_of(path));
      r.notes.push_back("certificate re-verifies");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidCertificate) throw;
      r.violations.push_back(e.what());
    }
  } else {
    throw Error(ErrorKind::ParseError, "unknown document kind '" + kind + "'");
  }
  if (r.violations.empty()) r.notes.push_back(kind + " is valid");
}

void cmd_compose(Report& r, const std::string& a, const std::string& b, const Options& o) {
  const auto f = load_morphism(a, o), g = load_morphism(b, o);
  require_same(f.target, g.source, "compose");
  morphism_violations(r, f);
  morphism_violations(r, g);
  if (r.violations.empty()) r.document = io::morphism_to_json(compose_morphisms(f, g));
}

void cmd_gauge(Report& r, const std::string& a, const std::string& b, const Options& o) {
  const auto f = load_morphism(a, o);
  const auto h = load_gauge(b, o);
  require_same(f.source, h.source, "gauge source");
  require_same(f.target, h.target, "gauge target");
  morphism_violations(r, f);
  if (r.violations.empty()) r.document = io::morphism_to_json(gauge_action(f, h.gauge));
}

void cmd_homotopy(Report& r, const std::string& a, const std::string& b, const Options& o) {
  const auto f1 = load_morphism(a, o), f2 = load_morphism(b, o);
  require_same(f1.source, f2.source, "homotopy-find source");
  require_same(f1.target, f2.target, "homotopy-find target");
  morphism_violations(r, f1);
  morphism_violations(r, f2);
  if (!r.violations.empty()) return;
  const auto found = find_homotopy(f1, f2);
  if (!found.certificate) {
    r.violations.push_back("NotHomotopic: no gauge solves arity " + std::to_string(found.failed_arity));
    return;
  }
  r.certificate = io::certificate_to_json(*found.certificate);
  r.document = r.certificate;
}

void cmd_transfer(Report& r, const std::string& a, const Options& o) {
  const auto g = load_algebra(a, o);
  structure_violations(r, g);
  if (!r.violations.empty()) return;
  const auto t = transfer(g);
  r.document = Json{{"kind", "transfer"},
                    {"transferred", io::algebra_to_json(t.transferred)},
                    {"embedding", io::morphism_to_json(t.embedding)},
                    {"projection", io::morphism_to_json(t.projection)}};
}

void cmd_invert_embedding(Report& r, const std::string& a, const Options& o) {
  const auto i = load_morphism(a, o);
  morphism_violations(r, i);
  if (!r.violations.empty()) return;
  const auto t = embedding_inverse(i);
  r.certificate = io::certificate_to_json(t.embedding_side);
  r.document = inversion_json(t.result, {&t.embedding_side, &t.source_side});
}

void cmd_invert(Report& r, const std::string& a, const Options& o) {
  const auto f = load_morphism(a, o);
  morphism_violations(r, f);
  if (!r.violations.empty()) return;
  const auto inv = homotopy_inverse(f);
  r.certificate = io::certificate_to_json(inv.target_side);
  r.document = inversion_json(inv.inverse, {&inv.source_side, &inv.target_side});
}

void cmd_cylinder(Report& r, const std::string& a, const std::string& b, const Options& o) {
  const auto u0 = load_morphism(a, o);
  const auto h = load_gauge(b, o);
  require_same(u0.source, h.source, "cylinder source");
  require_same(u0.target, h.target, "cylinder target");
  morphism_violations(r, u0);
  if (!r.violations.empty()) return;
  const auto cyl = build_cylinder(u0.target, o.t_degree.value_or(u0.truncation()));
  const auto u = cylinder_morphism(u0, h.gauge, cyl);
  for (const auto& m : check_morphism(u).violations) r.violations.push_back("U_Cyl: MC fails at " + where(u.source, m));
  if (compose_morphisms(u, evaluate_at(cyl, 0)).components != u0.components) r.violations.push_back("p0∘U_Cyl != U0");
  if (compose_morphisms(u, evaluate_at(cyl, 1)).components != gauge_action(u0, h.gauge).components)
    r.violations.push_back("p1∘U_Cyl != (U0)_H");
  r.notes.push_back("t-degree D = " + std::to_string(cyl.D));
  r.document = io::morphism_to_json(u);
}

void cmd_quillen(Report& r, const std::string& a, const Options& o) {
  const bool is_morphism = fs::exists(a) && kind_of(load(a)) == "morphism";
  if (!is_morphism) {
    const auto g = load_algebra(a, o);
    structure_violations(r, g);
    if (!r.violations.empty()) return;
    const auto c = functor_C(g);
    const auto l = functor_L(c);
    const auto& basis = l.lie.basis();
    r.notes.push_back("C(" + g.name + "): " + std::to_string(c.space.dim()) + " basis elements up to weight " +
                      std::to_string(c.truncation));
    r.notes.push_back("L(C(" + g.name + ")): " + std::to_string(l.generator_of.size()) + " generators, " +
                      std::to_string(basis.elements.size()) + " Lyndon elements up to length " + std::to_string(c.truncation));
    r.notes.push_back("validity window: word lengths <= " + std::to_string(c.truncation - 1));
    for (size_t i = 0; i < basis.elements.size(); ++i)
      if (basis.lengths[i] < c.truncation && !l.lie.d(l.lie.d(basis.elements[i])).empty())
        r.violations.push_back("d^2 != 0 on " + basis.labels[i]);
    if (g.is_dg_lie()) {
      const auto counit = adjunction_counit(g);
      if (!lie_map_is_dg(counit.lcy, counit.counit_generators, g)) r.violations.push_back("counit is not a dg Lie map");
      else r.notes.push_back("counit L(C(" + g.name + ")) -> " + g.name + " is a dg Lie map");
    }
    return;
  }
  const auto m = load_morphism(a, o);
  morphism_violations(r, m);
  if (!r.violations.empty()) return;
  const auto q = q_forward(m);
  if (!q.is_dg()) r.violations.push_back("Q(M) is not a dg Lie map");
  if (q_backward(q, m.source, m.target).components != m.components) r.violations.push_back("Q^-1(Q(M)) != M");
  r.notes.push_back(std::string("Q(M) embedding: ") + (q_is_embedding(q) ? "yes" : "no"));
  r.notes.push_back(std::string("Q(M) quasi-isomorphism: ") + (q_is_quasi_isomorphism(q) ? "yes" : "no"));
  r.notes.push_back("validity window: word lengths <= " + std::to_string(m.truncation() - 1));
}

void cmd_selftest(Report& r, const Options& o) {
  for (const auto& c : acceptance::run_all(o.seed)) {
    const std::string line = "criterion " + std::to_string(c.id) + " " + (c.passed ? "PASS" : "FAIL") + ": " + c.title + " (" + c.detail + ")";
    r.notes.push_back(line);
    if (!c.passed) r.violations.push_back(line);
  }
}

void cmd_export(Report& r, const std::string& name, const Options& o) {
  const auto g = fixtures::by_name(name, o.truncation);
  if (!g) throw Error(ErrorKind::ParseError, "unknown fixture '" + name + "'");
  r.document = io::algebra_to_json(*g);
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::DegreeMismatch:
    case ErrorKind::TruncationMismatch:
    case ErrorKind::MalformedPermutation:
      return 2;
    default:
      return 1;
  }
}

int emit(const Report& r, const std::string& status, const Options& o, std::ostream& out, std::ostream& err,
         const std::string& error = "") {
  if (o.format == "json") {
    Json j{{"command", r.command}, {"status", status}, {"violations", r.violations}};
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (!error.empty()) j["error"] = error;
    if (r.certificate) j["certificate"] = *r.certificate;
    if (r.document) j["document"] = *r.document;
    out << io::dump(j);
  } else {
    std::ostream& info = r.document ? err : out;
    for (const auto& n : r.notes) info << n << "\n";
    for (const auto& v : r.violations) info << "violation: " << v << "\n";
    if (!error.empty()) err << "error: " << error << "\n";
    if (r.document && status == "ok") out << io::dump(*r.document);
  }
  return status == "ok" ? 0 : status == "violated" ? 1 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact L-infinity morphisms, homotopies, transfer and inversion"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--truncation", o.truncation, "arity bound N")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "seed for randomized suites");
  app.add_option("--t-degree", o.t_degree, "polynomial degree D of the cylinder")->check(CLI::PositiveNumber);
  std::vector<std::string> operands;
  std::function<void(Report&)> action;
  auto command = [&](const std::string& name, const std::string& help, size_t count,
                     std::function<void(Report&, const std::vector<std::string>&)> body) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    if (count > 0) sub->add_option("inputs", operands, "input documents")->required()->expected(static_cast<int>(count));
    sub->callback([&, name, body] {
      action = [&, name, body](Report& r) {
        r.command = name;
        body(r, operands);
      };
    });
  };
  command("check", "validate an algebra, morphism, gauge or certificate", 1, [&](Report& r, const auto& v) { cmd_check(r, v[0], o); });
  command("compose", "G∘F for documents F G", 2, [&](Report& r, const auto& v) { cmd_compose(r, v[0], v[1], o); });
  command("gauge", "apply a gauge document H to F", 2, [&](Report& r, const auto& v) { cmd_gauge(r, v[0], v[1], o); });
  command("homotopy-find", "certificate for F1 ~ F2", 2, [&](Report& r, const auto& v) { cmd_homotopy(r, v[0], v[1], o); });
  command("transfer", "minimal model on cohomology", 1, [&](Report& r, const auto& v) { cmd_transfer(r, v[0], o); });
  command("invert-embedding", "left inverse of a quasi-isomorphic embedding", 1,
          [&](Report& r, const auto& v) { cmd_invert_embedding(r, v[0], o); });
  command("invert", "homotopy inverse of a quasi-isomorphism", 1, [&](Report& r, const auto& v) { cmd_invert(r, v[0], o); });
  command("cylinder", "path morphism U_Cyl from U0 and a gauge", 2, [&](Report& r, const auto& v) { cmd_cylinder(r, v[0], v[1], o); });
  command("quillen", "C, L and the Q correspondence", 1, [&](Report& r, const auto& v) { cmd_quillen(r, v[0], o); });
  command("selftest", "run the acceptance suite", 0, [&](Report& r, const auto&) { cmd_selftest(r, o); });
  command("export", "write a builtin fixture (FIX-A..FIX-D) as a document", 1, [&](Report& r, const auto& v) { cmd_export(r, v[0], o); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  o.truncation_set = app.count("--truncation") > 0;
  Report r;
  try {
    action(r);
  } catch (const Error& e) {
    if (exit_code_for(e.kind()) == 2) return emit(r, "malformed", o, out, err, e.what());
    r.violations.push_back(e.what());
    return emit(r, "violated", o, out, err);
  } catch (const std::exception& e) {
    return emit(r, "malformed", o, out, err, e.what());
  }
  return emit(r, r.violations.empty() ? "ok" : "violated", o, out, err);
}

}  // namespace linf::cli
