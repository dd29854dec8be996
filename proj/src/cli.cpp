#include "socf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "socf/analysis.hpp"
#include "socf/document.hpp"
#include "socf/error.hpp"

namespace socf::cli {

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch:
    case ErrorKind::DimensionTooLarge:
      return kDimensionError;
    default:
      return kParseError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
  file << text;
}

io::SocfDocument load(const std::string& path) { return io::parse_document(read_file(path)); }

analysis::Interval parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::Parse, "range '" + text + "' must be a:b");
  const Vector lo = io::parse_vector_arg(text.substr(0, colon));
  const Vector hi = io::parse_vector_arg(text.substr(colon + 1));
  if (lo.size() != 1 || hi.size() != 1 || !(lo(0) < hi(0))) {
    throw Error(ErrorKind::Parse, "range '" + text + "' must be a:b with a < b");
  }
  return {lo(0), hi(0)};
}

struct Options {
  std::string input;
  std::string output;
  bool probe = false;
  bool human = false;
  std::uint64_t seed = 42;
  std::string at;
  std::string x0;
  std::string basis;
  std::string xrange = "-2:2";
  std::string yrange = "-2:2";
  std::size_t nx = 41;
  std::size_t ny = 41;
};

int cmd_canonicalize(const Options& o, std::ostream& out) {
  const io::SocfDocument doc = load(o.input);
  io::SocfDocument canon{doc.canonical(), doc.label};
  write_output(o.output, io::serialize_document(canon), out);
  return kOk;
}

int cmd_classify(const Options& o, bool probe, std::ostream& out) {
  const io::SocfDocument doc = load(o.input);
  io::Report report = io::build_report(doc);
  int status = kOk;
  if (probe) {
    oracle::ProbeConfig cfg;
    cfg.seed = o.seed;
    report.probe = io::run_probes(report, cfg);
    if (!report.probe->contradictions.empty()) status = kProbeContradiction;
  }
  out << (o.human ? io::render_report_human(report) : io::serialize_report(report));
  return status;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const io::SocfDocument doc = load(o.input);
  const Vector x = io::parse_vector_arg(o.at);
  out << io::format_double(doc.evaluate(x)) << "\n";
  return kOk;
}

int cmd_restrict(const Options& o, std::ostream& out) {
  const io::SocfDocument doc = load(o.input);
  const GeneralForm general = doc.is_general() ? std::get<GeneralForm>(doc.form)
                                               : reconstruct(std::get<CanonicalForm>(doc.form));
  const Vector x0 = io::parse_vector_arg(o.x0);
  const Matrix basis = io::parse_matrix_arg(o.basis);
  io::SocfDocument restricted{restrict(general, x0, basis), doc.label};
  write_output(o.output, io::serialize_document(restricted), out);
  return kOk;
}

int cmd_contour(const Options& o, std::ostream& out) {
  const io::SocfDocument doc = load(o.input);
  if (doc.dim() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "contour needs a function of two variables");
  }
  const auto grid = analysis::contour_grid(doc.canonical(), parse_range(o.xrange),
                                           parse_range(o.yrange), o.nx, o.ny);
  std::string csv = "x,y,f\n";
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      csv += io::format_double(grid.xs[i]) + "," + io::format_double(grid.ys[j]) + "," +
             io::format_double(grid.at(i, j)) + "\n";
    }
  }
  write_output(o.output, csv, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analyze second-order cone functions f(x) = c^T x + d - ||A x + b||", "socf"};
  app.require_subcommand(1);
  Options o;

  auto* canon = app.add_subcommand("canonicalize", "Rewrite a document in canonical form");
  canon->add_option("input", o.input, "SOCF document")->required();
  canon->add_option("output", o.output, "Output path (default: stdout)");

  auto* classify = app.add_subcommand("classify", "Classify concavity, boundedness and region");
  classify->add_option("input", o.input, "SOCF document")->required();
  classify->add_flag("--probe", o.probe, "Cross-check with the sampling oracles");
  classify->add_option("--seed", o.seed, "Probe seed");
  classify->add_flag("--human", o.human, "Tabular output");

  auto* check = app.add_subcommand("check", "Classify and cross-check with the oracles");
  check->add_option("input", o.input, "SOCF document")->required();
  check->add_option("--seed", o.seed, "Probe seed");
  check->add_flag("--human", o.human, "Tabular output");

  auto* eval = app.add_subcommand("eval", "Evaluate f at a point");
  eval->add_option("input", o.input, "SOCF document")->required();
  eval->add_option("--at", o.at, "Point, comma separated")->required()->allow_extra_args(false);

  auto* restr = app.add_subcommand("restrict", "Restrict to the affine set x0 + B y");
  restr->add_option("input", o.input, "SOCF document")->required();
  restr->add_option("output", o.output, "Output path (default: stdout)");
  restr->add_option("--x0", o.x0, "Offset, comma separated")->required();
  restr->add_option("--B", o.basis, "Matrix, rows separated by ';'")->required();

  auto* contour = app.add_subcommand("contour", "Emit an x,y,f CSV grid for n = 2");
  contour->add_option("input", o.input, "SOCF document")->required();
  contour->add_option("output", o.output, "Output path (default: stdout)");
  contour->add_option("--xrange", o.xrange, "a:b");
  contour->add_option("--yrange", o.yrange, "a:b");
  contour->add_option("--nx", o.nx, "Points along x")->check(CLI::Range(2, 100000));
  contour->add_option("--ny", o.ny, "Points along y")->check(CLI::Range(2, 100000));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kParseError;
  }

  try {
    if (*canon) return cmd_canonicalize(o, out);
    if (*classify) return cmd_classify(o, o.probe, out);
    if (*check) return cmd_classify(o, true, out);
    if (*eval) return cmd_eval(o, out);
    if (*restr) return cmd_restrict(o, out);
    if (*contour) return cmd_contour(o, out);
  } catch (const Error& e) {
    err << "socf: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kParseError;
}

}  // namespace socf::cli
