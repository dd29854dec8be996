#include "socf/document.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "socf/error.hpp"

namespace socf::io {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

double read_number(const json& j, const std::string& field) {
  if (!j.is_number()) parse_fail("field '" + field + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail("field '" + field + "' is not finite");
  return v;
}

Vector read_vector(const json& j, const std::string& field) {
  if (!j.is_array()) parse_fail("field '" + field + "' must be an array of numbers");
  if (j.empty()) throw Error(ErrorKind::DimensionMismatch, "field '" + field + "' is empty");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = read_number(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix read_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) parse_fail("field '" + field + "' must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array()) parse_fail("field '" + field + "' row " + std::to_string(r) + " is not an array");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols || cols == 0) {
      throw Error(ErrorKind::DimensionMismatch,
                  "field '" + field + "' rows must be non-empty and of equal length");
    }
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = read_number(
          j[r][c], field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

const json& require(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end()) parse_fail(std::string("missing field '") + field + "'");
  return *it;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

// JSON has no infinity; unbounded suprema are written as the string "inf".
json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json document_json(const SocfDocument& doc) {
  json out;
  if (const auto* f = std::get_if<GeneralForm>(&doc.form)) {
    out["form"] = "general";
    if (doc.label) out["label"] = *doc.label;
    out["c"] = to_json(f->c);
    out["d"] = f->d;
    out["A"] = to_json(f->A);
    out["b"] = to_json(f->b);
  } else {
    const auto& g = std::get<CanonicalForm>(doc.form);
    out["form"] = "canonical";
    if (doc.label) out["label"] = *doc.label;
    out["c"] = to_json(g.c);
    out["d"] = g.d;
    out["delta"] = g.delta;
    out["M"] = to_json(g.M);
    out["x_star"] = to_json(g.x_star);
  }
  return out;
}

}  // namespace

std::size_t SocfDocument::dim() const {
  return std::visit([](const auto& f) { return f.dim(); }, form);
}

CanonicalForm SocfDocument::canonical(const TolerancePolicy& tol) const {
  if (const auto* f = std::get_if<GeneralForm>(&form)) return canonicalize(*f, tol);
  return std::get<CanonicalForm>(form);
}

double SocfDocument::evaluate(const Vector& x) const {
  if (const auto* f = std::get_if<GeneralForm>(&form)) return eval_general(*f, x);
  return eval_canonical(std::get<CanonicalForm>(form), x);
}

SocfDocument parse_document(const std::string& text, const TolerancePolicy& tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("malformed document: ") + e.what());
  }
  if (!j.is_object()) parse_fail("document must be an object");
  const json& form = require(j, "form");
  if (!form.is_string()) parse_fail("field 'form' must be \"general\" or \"canonical\"");
  const std::string kind = form.get<std::string>();

  std::set<std::string> allowed{"form", "label", "c", "d"};
  if (kind == "general") {
    allowed.insert({"A", "b"});
  } else if (kind == "canonical") {
    allowed.insert({"delta", "M", "x_star"});
  } else {
    parse_fail("field 'form' must be \"general\" or \"canonical\", got \"" + kind + "\"");
  }
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) parse_fail("unknown field '" + item.key() + "'");
  }

  SocfDocument doc;
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) parse_fail("field 'label' must be a string");
    doc.label = it->get<std::string>();
  }
  if (kind == "general") {
    GeneralForm f;
    f.c = read_vector(require(j, "c"), "c");
    f.d = read_number(require(j, "d"), "d");
    f.A = read_matrix(require(j, "A"), "A");
    f.b = read_vector(require(j, "b"), "b");
    f.validate();
    doc.form = std::move(f);
  } else {
    CanonicalForm g;
    g.c = read_vector(require(j, "c"), "c");
    g.d = read_number(require(j, "d"), "d");
    g.delta = read_number(require(j, "delta"), "delta");
    g.M = read_matrix(require(j, "M"), "M");
    g.x_star = read_vector(require(j, "x_star"), "x_star");
    if (g.delta < 0.0) parse_fail("field 'delta' must be non-negative");
    if (g.M.rows() == g.M.cols() && g.M.rows() == g.c.size() && !linalg::is_symmetric(g.M, tol)) {
      parse_fail("field 'M' is not symmetric");
    }
    g.validate(tol);
    doc.form = std::move(g);
  }
  return doc;
}

std::string serialize_document(const SocfDocument& doc) {
  return document_json(doc).dump(2) + "\n";
}

Report build_report(const SocfDocument& doc, const TolerancePolicy& tol) {
  Report r;
  r.label = doc.label;
  r.canonical = doc.canonical(tol);
  if (const auto* f = std::get_if<GeneralForm>(&doc.form)) {
    r.concavity = analysis::concavity_class(*f, tol);
  } else {
    r.concavity = analysis::concavity_class(r.canonical, tol);
  }
  r.boundedness = analysis::boundedness_report(r.canonical, tol);
  r.region = analysis::region_class(r.canonical, r.boundedness, tol);
  return r;
}

ProbeSummary run_probes(const Report& report, const oracle::ProbeConfig& cfg,
                        const TolerancePolicy& tol) {
  const CanonicalForm& g = report.canonical;
  const auto& b = report.boundedness;
  const double scale = scale_of(g);
  ProbeSummary s;
  s.seed = cfg.seed;
  s.concavity = oracle::concavity_probe(g, cfg);
  s.boundedness = oracle::boundedness_probe(g, cfg, tol);

  if (!s.concavity.consistent) {
    s.contradictions.push_back("concavity probe found a chord above the graph");
  }
  if (s.boundedness.claims_bounded != b.bounded_above) {
    const std::string msg = "boundedness probe claims " +
                            std::string(s.boundedness.claims_bounded ? "bounded" : "unbounded");
    if (b.boundary_flag) {
      s.notes.push_back(msg + " (boundary case |q - 1| <= eq, not counted)");
    } else {
      s.contradictions.push_back(msg);
    }
  }
  if (b.boundary_flag) s.notes.push_back("q lies in the tolerance band around 1");

  if (b.attained && g.dim() <= 3) {
    const Vector& base = b.critical_set.base;
    const double half = 2.0 * (1.0 + (base - g.x_star).norm());
    std::vector<analysis::Interval> box;
    for (Eigen::Index i = 0; i < base.size(); ++i) box.push_back({base(i) - half, base(i) + half});
    s.grid = oracle::grid_max(g, box, 41, 5);
    if (std::abs(s.grid->value - b.supremum) > 1e-5 * scale) {
      s.contradictions.push_back("grid search maximum " + format_double(s.grid->value) +
                                 " differs from the supremum " + format_double(b.supremum));
    }
  }

  const auto kind = b.critical_set.kind;
  if (g.delta > tol.zero &&
      (kind == analysis::CriticalKind::Point || kind == analysis::CriticalKind::PointPlusNull)) {
    const Vector fd = oracle::finite_diff_gradient(g, b.critical_set.base, cfg.h_fd, tol);
    s.gradient_norm_at_base = fd.norm();
    if (fd.norm() > 1e-6 * scale) {
      s.contradictions.push_back("finite-difference gradient does not vanish at the critical point");
    }
  }
  return s;
}

namespace {

json critical_json(const analysis::CriticalSet& cs) {
  json out;
  out["kind"] = std::string(analysis::to_string(cs.kind));
  out["base"] = cs.base.size() ? to_json(cs.base) : json(nullptr);
  out["direction"] = cs.direction.size() ? to_json(cs.direction) : json(nullptr);
  if (cs.null_basis.size()) {
    json cols = json::array();
    for (Eigen::Index j = 0; j < cs.null_basis.cols(); ++j) {
      cols.push_back(to_json(Vector(cs.null_basis.col(j))));
    }
    out["null_basis"] = std::move(cols);
  } else {
    out["null_basis"] = nullptr;
  }
  return out;
}

}  // namespace

std::string serialize_report(const Report& r) {
  json out;
  out["label"] = r.label ? json(*r.label) : json(nullptr);
  SocfDocument canon{r.canonical, std::nullopt};
  out["canonical"] = document_json(canon);

  json conc;
  conc["strictly_concave"] = r.concavity.strictly_concave;
  conc["reasons"] = json::array();
  for (auto reason : r.concavity.reasons) {
    conc["reasons"].push_back(std::string(analysis::to_string(reason)));
  }
  out["concavity"] = std::move(conc);

  const auto& b = r.boundedness;
  json bj;
  bj["case_tag"] = std::string(analysis::to_string(b.case_tag));
  bj["subcase"] = b.subcase ? json(*b.subcase) : json(nullptr);
  bj["bounded_above"] = b.bounded_above;
  bj["q"] = b.q ? json(*b.q) : json(nullptr);
  bj["supremum"] = number_or_inf(b.supremum);
  bj["attained"] = b.attained;
  bj["boundary_flag"] = b.boundary_flag;
  bj["critical_set"] = critical_json(b.critical_set);
  out["boundedness"] = std::move(bj);
  out["region"] = std::string(analysis::to_string(r.region.kind));

  if (r.probe) {
    const auto& p = *r.probe;
    json pj;
    pj["seed"] = p.seed;
    pj["concavity"] = {{"consistent", p.concavity.consistent},
                       {"worst_violation", p.concavity.worst_violation}};
    pj["boundedness"] = {{"claims_bounded", p.boundedness.claims_bounded},
                         {"max_seen", number_or_inf(p.boundedness.max_seen)},
                         {"max_slope", p.boundedness.max_slope}};
    if (p.grid) {
      pj["grid_max"] = {{"argmax", to_json(p.grid->argmax)}, {"value", p.grid->value}};
    } else {
      pj["grid_max"] = nullptr;
    }
    pj["gradient_norm_at_base"] =
        p.gradient_norm_at_base ? json(*p.gradient_norm_at_base) : json(nullptr);
    pj["notes"] = p.notes;
    pj["contradictions"] = p.contradictions;
    out["probe"] = std::move(pj);
  }
  return out.dump(2) + "\n";
}

namespace {

std::string vec_text(const Vector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v(i));
  }
  return s + ")";
}

}  // namespace

std::string render_report_human(const Report& r) {
  std::ostringstream os;
  const auto& g = r.canonical;
  const auto& b = r.boundedness;
  auto row = [&os](const char* key, const std::string& value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-18s", key);
    os << buf << value << "\n";
  };
  row("label", r.label.value_or("-"));
  row("dimension", std::to_string(g.dim()));
  row("c", vec_text(g.c));
  row("d", format_double(g.d));
  row("delta", format_double(g.delta));
  row("x_star", vec_text(g.x_star));
  std::string reasons;
  for (auto reason : r.concavity.reasons) {
    reasons += (reasons.empty() ? " (" : ", ") + std::string(analysis::to_string(reason));
  }
  if (!reasons.empty()) reasons += ")";
  row("strictly concave", (r.concavity.strictly_concave ? "yes" : "no") + reasons);
  row("case", std::string(analysis::to_string(b.case_tag)));
  row("q", b.q ? format_double(*b.q) : "-");
  row("bounded above", b.bounded_above ? "yes" : "no");
  row("supremum", std::isinf(b.supremum) ? "inf" : format_double(b.supremum));
  row("attained", b.attained ? "yes" : "no");
  row("boundary flag", b.boundary_flag ? "yes" : "no");
  std::string crit(analysis::to_string(b.critical_set.kind));
  if (b.critical_set.base.size()) crit += " at " + vec_text(b.critical_set.base);
  if (b.critical_set.direction.size()) crit += " along " + vec_text(b.critical_set.direction);
  if (b.critical_set.null_basis.size()) {
    crit += " + null space of dim " + std::to_string(b.critical_set.null_basis.cols());
  }
  row("critical set", crit);
  row("region", std::string(analysis::to_string(r.region.kind)));
  if (r.probe) {
    const auto& p = *r.probe;
    row("probe seed", std::to_string(p.seed));
    row("probe concavity", p.concavity.consistent ? "consistent" : "VIOLATED");
    row("probe bounded", p.boundedness.claims_bounded ? "yes" : "no");
    if (p.grid) row("probe grid max", format_double(p.grid->value));
    for (const auto& n : p.notes) row("note", n);
    for (const auto& c : p.contradictions) row("CONTRADICTION", c);
  }
  return os.str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_number_text(const std::string& raw) {
  std::size_t b = raw.find_first_not_of(" \t");
  std::size_t e = raw.find_last_not_of(" \t");
  if (b == std::string::npos) parse_fail("empty number in list");
  const std::string t = raw.substr(b, e - b + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    parse_fail("'" + t + "' is not a number");
  }
  if (used != t.size() || !std::isfinite(v)) parse_fail("'" + t + "' is not a finite number");
  return v;
}

}  // namespace

Vector parse_vector_arg(const std::string& text) {
  if (text.find_first_not_of(" \t") == std::string::npos) return Vector(0);
  const auto parts = split(text, ',');
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = parse_number_text(parts[i]);
  }
  return v;
}

Matrix parse_matrix_arg(const std::string& text) {
  const auto rows = split(text, ';');
  std::vector<Vector> parsed;
  for (const auto& r : rows) parsed.push_back(parse_vector_arg(r));
  const auto cols = parsed.front().size();
  for (const auto& r : parsed) {
    if (r.size() != cols) throw Error(ErrorKind::DimensionMismatch, "matrix rows differ in length");
  }
  Matrix m(static_cast<Eigen::Index>(parsed.size()), cols);
  for (std::size_t i = 0; i < parsed.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = parsed[i];
  return m;
}

}  // namespace socf::io
