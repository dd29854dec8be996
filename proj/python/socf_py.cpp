#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "socf/analysis.hpp"
#include "socf/document.hpp"
#include "socf/error.hpp"
#include "socf/forms.hpp"
#include "socf/linalg.hpp"
#include "socf/oracle.hpp"

namespace py = pybind11;
using namespace socf;

namespace {

void bind_linalg(py::module_& m) {
  py::class_<TolerancePolicy>(m, "TolerancePolicy")
      .def(py::init<>())
      .def(py::init([](double rank, double zero, double eq) {
             TolerancePolicy t{rank, zero, eq};
             t.validate();
             return t;
           }),
           py::arg("rank") = 1e-10, py::arg("zero") = 1e-12, py::arg("eq") = 1e-9)
      .def_readwrite("rank", &TolerancePolicy::rank)
      .def_readwrite("zero", &TolerancePolicy::zero)
      .def_readwrite("eq", &TolerancePolicy::eq);

  m.def(
      "sym_eigen",
      [](const Matrix& s, const TolerancePolicy& tol) {
        SymEigen e = linalg::sym_eigen(s, tol);
        return py::make_tuple(e.eigenvalues, e.eigenvectors);
      },
      py::arg("S"), py::arg("tol") = TolerancePolicy{},
      "Ascending eigenvalues and orthonormal eigenvectors (columns).");
  m.def("pseudoinverse", &linalg::pseudoinverse, py::arg("A"), py::arg("tol") = TolerancePolicy{});
  m.def("psd_sqrt", &linalg::psd_sqrt, py::arg("M"), py::arg("tol") = TolerancePolicy{});
  m.def("rank_of", &linalg::rank_of, py::arg("A"), py::arg("tol") = TolerancePolicy{});
  m.def("colspace_projector", &linalg::colspace_projector, py::arg("M"),
        py::arg("tol") = TolerancePolicy{});
}

void bind_forms(py::module_& m) {
  py::class_<GeneralForm>(m, "GeneralForm")
      .def(py::init([](Vector c, double d, Matrix A, Vector b) {
             GeneralForm f{std::move(c), d, std::move(A), std::move(b)};
             f.validate();
             return f;
           }),
           py::arg("c"), py::arg("d"), py::arg("A"), py::arg("b"))
      .def_readwrite("c", &GeneralForm::c)
      .def_readwrite("d", &GeneralForm::d)
      .def_readwrite("A", &GeneralForm::A)
      .def_readwrite("b", &GeneralForm::b)
      .def_property_readonly("dim", &GeneralForm::dim)
      .def("__call__", [](const GeneralForm& f, const Vector& x) { return eval_general(f, x); });

  py::class_<CanonicalForm>(m, "CanonicalForm")
      .def(py::init([](Vector c, double d, double delta, Matrix M, Vector x_star) {
             CanonicalForm g{std::move(c), d, delta, std::move(M), std::move(x_star)};
             g.validate();
             return g;
           }),
           py::arg("c"), py::arg("d"), py::arg("delta"), py::arg("M"), py::arg("x_star"))
      .def_readwrite("c", &CanonicalForm::c)
      .def_readwrite("d", &CanonicalForm::d)
      .def_readwrite("delta", &CanonicalForm::delta)
      .def_readwrite("M", &CanonicalForm::M)
      .def_readwrite("x_star", &CanonicalForm::x_star)
      .def_property_readonly("dim", &CanonicalForm::dim)
      .def("__call__", [](const CanonicalForm& g, const Vector& x) { return eval_canonical(g, x); });

  py::class_<LineRestriction>(m, "LineRestriction")
      .def_readonly("c", &LineRestriction::c)
      .def_readonly("d", &LineRestriction::d)
      .def_readonly("delta", &LineRestriction::delta)
      .def_readonly("slope2", &LineRestriction::slope2)
      .def_readonly("t_star", &LineRestriction::t_star)
      .def_property_readonly("linear", &LineRestriction::linear)
      .def_property_readonly("strictly_concave", &LineRestriction::strictly_concave)
      .def("__call__", &LineRestriction::operator());

  py::class_<AsymptoteData>(m, "AsymptoteData")
      .def_readonly("slope", &AsymptoteData::slope)
      .def_readonly("intercept", &AsymptoteData::intercept);

  const TolerancePolicy def{};
  m.def("eval_general", &socf::eval_general, py::arg("F"), py::arg("x"));
  m.def("eval_canonical", &socf::eval_canonical, py::arg("G"), py::arg("x"));
  m.def("gradient", &socf::gradient, py::arg("G"), py::arg("x"), py::arg("tol") = def);
  m.def("hessian", &socf::hessian, py::arg("G"), py::arg("x"), py::arg("tol") = def);
  m.def("canonicalize", &socf::canonicalize, py::arg("F"), py::arg("tol") = def);
  m.def("reconstruct", &socf::reconstruct, py::arg("G"), py::arg("tol") = def);
  m.def("restrict", &socf::restrict, py::arg("F"), py::arg("x0"), py::arg("B"));
  m.def("restrict_to_line", &socf::restrict_to_line, py::arg("F"), py::arg("x0"), py::arg("v"),
        py::arg("tol") = def);
  m.def("socf_equal", &socf::socf_equal, py::arg("G1"), py::arg("G2"), py::arg("tol") = def);
  m.def("asymptote", &socf::asymptote, py::arg("G"), py::arg("v"), py::arg("tol") = def);
  m.def("scale_of", &socf::scale_of, py::arg("G"));
}

void bind_analysis(py::module_& m) {
  using namespace socf::analysis;

  py::enum_<ConcavityReason> reason(m, "ConcavityReason");
  reason.value("RankDeficient", ConcavityReason::RankDeficient)
      .value("DeltaZero", ConcavityReason::DeltaZero);

  py::enum_<CriticalKind> kind(m, "CriticalKind");
  kind.value("None_", CriticalKind::None)
      .value("Point", CriticalKind::Point)
      .value("Ray", CriticalKind::Ray)
      .value("PointPlusNull", CriticalKind::PointPlusNull)
      .value("RayPlusNull", CriticalKind::RayPlusNull);

  py::enum_<CaseTag> tag(m, "CaseTag");
  for (CaseTag t : {CaseTag::PD1, CaseTag::PD2, CaseTag::PD3, CaseTag::PD4, CaseTag::PD5,
                    CaseTag::PD6, CaseTag::SemiDefNotInCol, CaseTag::SemiDefBounded,
                    CaseTag::SemiDefUnbounded, CaseTag::LinearBounded, CaseTag::LinearUnbounded}) {
    tag.value(std::string(to_string(t)).c_str(), t);
  }

  py::enum_<RegionKind> region(m, "RegionKind");
  region.value("Empty", RegionKind::Empty)
      .value("Singleton", RegionKind::Singleton)
      .value("CompactWithInterior", RegionKind::CompactWithInterior)
      .value("UnboundedNonempty", RegionKind::UnboundedNonempty);

  py::class_<ConcavityClass>(m, "ConcavityClass")
      .def_readonly("strictly_concave", &ConcavityClass::strictly_concave)
      .def_readonly("reasons", &ConcavityClass::reasons);

  py::class_<CriticalSet>(m, "CriticalSet")
      .def_readonly("kind", &CriticalSet::kind)
      .def_readonly("base", &CriticalSet::base)
      .def_readonly("direction", &CriticalSet::direction)
      .def_readonly("null_basis", &CriticalSet::null_basis);

  py::class_<BoundednessReport>(m, "BoundednessReport")
      .def_readonly("bounded_above", &BoundednessReport::bounded_above)
      .def_readonly("case_tag", &BoundednessReport::case_tag)
      .def_readonly("subcase", &BoundednessReport::subcase)
      .def_readonly("q", &BoundednessReport::q)
      .def_readonly("supremum", &BoundednessReport::supremum)
      .def_readonly("attained", &BoundednessReport::attained)
      .def_readonly("critical_set", &BoundednessReport::critical_set)
      .def_readonly("boundary_flag", &BoundednessReport::boundary_flag);

  const TolerancePolicy def{};
  m.def("concavity_class",
        py::overload_cast<const CanonicalForm&, const TolerancePolicy&>(&concavity_class),
        py::arg("G"), py::arg("tol") = def);
  m.def("concavity_class",
        py::overload_cast<const GeneralForm&, const TolerancePolicy&>(&concavity_class),
        py::arg("F"), py::arg("tol") = def);
  m.def("boundedness_report", &boundedness_report, py::arg("G"), py::arg("tol") = def);
  m.def("critical_points", &critical_points, py::arg("G"), py::arg("tol") = def);
  m.def(
      "region_class",
      [](const CanonicalForm& g, const TolerancePolicy& tol) { return region_class(g, tol).kind; },
      py::arg("G"), py::arg("tol") = def);
  m.def(
      "contour_grid",
      [](const CanonicalForm& g, std::pair<double, double> xr, std::pair<double, double> yr,
         std::size_t nx, std::size_t ny) {
        const ContourGrid grid =
            contour_grid(g, {xr.first, xr.second}, {yr.first, yr.second}, nx, ny);
        Matrix values(static_cast<Eigen::Index>(ny), static_cast<Eigen::Index>(nx));
        for (std::size_t j = 0; j < ny; ++j) {
          for (std::size_t i = 0; i < nx; ++i) {
            values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = grid.at(i, j);
          }
        }
        return py::make_tuple(grid.xs, grid.ys, values);
      },
      py::arg("G"), py::arg("x_range"), py::arg("y_range"), py::arg("nx"), py::arg("ny"),
      "Returns (xs, ys, values) with values[j, i] = f(xs[i], ys[j]).");
}

void bind_oracle(py::module_& m) {
  using namespace socf::oracle;
  py::class_<ProbeConfig>(m, "ProbeConfig")
      .def(py::init<>())
      .def_readwrite("n_segments", &ProbeConfig::n_segments)
      .def_readwrite("n_directions", &ProbeConfig::n_directions)
      .def_readwrite("t_max", &ProbeConfig::t_max)
      .def_readwrite("seed", &ProbeConfig::seed)
      .def_readwrite("h_fd", &ProbeConfig::h_fd);

  m.def(
      "concavity_probe",
      [](const CanonicalForm& g, const ProbeConfig& cfg) {
        const ConcavityProbe p = concavity_probe(g, cfg);
        return py::make_tuple(p.consistent, p.worst_violation);
      },
      py::arg("G"), py::arg("cfg") = ProbeConfig{}, "Returns (consistent, worst_violation).");
  m.def(
      "boundedness_probe",
      [](const CanonicalForm& g, const ProbeConfig& cfg) {
        const BoundednessProbe p = boundedness_probe(g, cfg);
        return py::make_tuple(p.claims_bounded, p.max_seen);
      },
      py::arg("G"), py::arg("cfg") = ProbeConfig{}, "Returns (claims_bounded, max_seen).");
  m.def(
      "finite_diff_gradient",
      [](const CanonicalForm& g, const Vector& x, double h) {
        return finite_diff_gradient(g, x, h);
      },
      py::arg("G"), py::arg("x"), py::arg("h") = 1e-5);
  m.def(
      "grid_max",
      [](const CanonicalForm& g, const std::vector<std::pair<double, double>>& box,
         std::size_t n_per_axis, std::size_t refine_rounds) {
        std::vector<analysis::Interval> b;
        for (const auto& [lo, hi] : box) b.push_back({lo, hi});
        const GridMax r = grid_max(g, b, n_per_axis, refine_rounds);
        return py::make_tuple(r.argmax, r.value);
      },
      py::arg("G"), py::arg("box"), py::arg("n_per_axis") = 41, py::arg("refine_rounds") = 5,
      "Returns (argmax, value).");
}

void bind_io(py::module_& m) {
  m.def(
      "classify_document",
      [](const std::string& text, bool probe, std::uint64_t seed) {
        io::Report report = io::build_report(io::parse_document(text));
        if (probe) {
          oracle::ProbeConfig cfg;
          cfg.seed = seed;
          report.probe = io::run_probes(report, cfg);
        }
        return io::serialize_report(report);
      },
      py::arg("text"), py::arg("probe") = false, py::arg("seed") = 42,
      "Parses a JSON SOCF document and returns the JSON report text.");
  m.def(
      "canonicalize_document",
      [](const std::string& text) {
        const io::SocfDocument doc = io::parse_document(text);
        return io::serialize_document({doc.canonical(), doc.label});
      },
      py::arg("text"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Second-order cone function analysis";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result(
      [&]() { return py::exception<Error>(m, "SocfError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      PyErr_SetString(error.get_stored().ptr(), msg.c_str());
    }
  });

  bind_linalg(m);
  bind_forms(m);
  bind_analysis(m);
  bind_oracle(m);
  bind_io(m);
}
