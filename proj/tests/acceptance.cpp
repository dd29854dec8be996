// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "fixtures.hpp"
#include "socf/analysis.hpp"
#include "socf/cli.hpp"
#include "socf/document.hpp"
#include "socf/error.hpp"
#include "socf/oracle.hpp"

using namespace socf;
using namespace socf::analysis;
using fixtures::mat;
using fixtures::vec;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return io::format_double(v); }

void ac1(Check& c) {
  const auto t0 = Clock::now();
  const GeneralForm f = fixtures::three_by_two();
  const Matrix pinv = linalg::pseudoinverse(f.A);
  const Matrix pinv_want = mat({{5, -4, 2}, {1, 1, 4}}) / 9.0;
  const CanonicalForm g = canonicalize(f);
  c.expect(linalg::max_abs(pinv - pinv_want) <= 1e-10, "A+ entries");
  c.expect(linalg::max_abs(g.M - mat({{2, -1}, {-1, 5}})) <= 1e-10, "M entries");
  c.expect(std::abs(g.x_star(0) - 1.0 / 9.0) <= 1e-10 && std::abs(g.x_star(1) - 2.0 / 9.0) <= 1e-10,
           "x* entries");
  c.expect(std::abs(g.delta - 5.0 / 3.0) <= 1e-10, "delta = " + fmt(g.delta));
  const double t = seconds_since(t0);
  c.expect(t < 1.0, "runtime " + fmt(t) + " s");
}

void ac2(Check& c) {
  const CaseTag want[6] = {CaseTag::PD1, CaseTag::PD2, CaseTag::PD3,
                           CaseTag::PD4, CaseTag::PD5, CaseTag::PD6};
  const double scales[3] = {0.7, 1.0, 1.3};
  const double qs[3] = {0.49, 1.0, 1.69};
  for (int delta = 0; delta < 2; ++delta) {
    for (int k = 0; k < 3; ++k) {
      const BoundednessReport r = boundedness_report(fixtures::six_case(scales[k], delta));
      const int idx = 3 * delta + k;
      c.expect(r.case_tag == want[idx], "instance " + std::to_string(idx + 1) + " tagged " +
                                            std::string(to_string(r.case_tag)));
      c.expect(r.q && std::abs(*r.q - qs[k]) <= 1e-12, "q for instance " + std::to_string(idx + 1));
    }
  }
  const CriticalSet ray = critical_points(fixtures::six_case(1.0, 0.0));
  c.expect(ray.kind == CriticalKind::Ray, "PD2 critical set is a ray");
  if (ray.direction.size() == 2) {
    const Vector u = ray.direction.normalized();
    const Vector w = vec({2.0 / 3.0, 1.0 / 3.0}).normalized();
    c.expect(std::abs(u(0) * w(1) - u(1) * w(0)) <= 1e-10 && u.dot(w) > 0, "ray direction");
  }
}

void ac3(Check& c) {
  const CanonicalForm g = fixtures::six_case(0.7, 1.0);
  const BoundednessReport r = boundedness_report(g);
  const Vector want = fixtures::pd4_maximizer();
  c.expect(r.case_tag == CaseTag::PD4, "tag");
  c.expect((r.critical_set.base - want).norm() <= 1e-9, "x_cp");
  const double f_cp = eval_canonical(g, r.critical_set.base);
  c.expect(std::abs(f_cp + std::sqrt(0.51)) <= 1e-12, "f(x_cp) = " + fmt(f_cp));
  c.expect(std::abs(r.supremum + std::sqrt(0.51)) <= 1e-12, "supremum");
  c.expect(gradient(g, r.critical_set.base).norm() <= 1e-8, "gradient at x_cp");
  const oracle::GridMax gm = oracle::grid_max(g, {{-2, 2}, {-2, 2}}, 41, 5);
  c.expect(std::abs(gm.value + std::sqrt(0.51)) <= 1e-5, "grid_max value " + fmt(gm.value));
}

void ac4(Check& c) {
  auto has = [](const ConcavityClass& k, ConcavityReason r) {
    return std::find(k.reasons.begin(), k.reasons.end(), r) != k.reasons.end();
  };
  const ConcavityClass a = concavity_class(canonicalize(fixtures::gallery_a()));
  const ConcavityClass b = concavity_class(canonicalize(fixtures::gallery_b()));
  const ConcavityClass cc = concavity_class(canonicalize(fixtures::gallery_c()));
  const ConcavityClass d = concavity_class(canonicalize(fixtures::gallery_d()));
  c.expect(a.strictly_concave, "(a) strictly concave");
  c.expect(!b.strictly_concave && b.reasons.size() == 1 && has(b, ConcavityReason::DeltaZero),
           "(b) DeltaZero only");
  c.expect(!cc.strictly_concave && cc.reasons.size() == 1 && has(cc, ConcavityReason::RankDeficient),
           "(c) RankDeficient only");
  c.expect(!d.strictly_concave && has(d, ConcavityReason::RankDeficient) &&
               has(d, ConcavityReason::DeltaZero),
           "(d) both reasons");
}

void ac5(Check& c) {
  for (double c2 : {-2.0, -1e-3, 1e-3, 0.5, 3.0}) {
    for (double c1 : {-3.0, 0.0, 1.0, 2.0}) {
      for (double delta : {0.0, 1.0}) {
        const BoundednessReport r = boundedness_report(fixtures::semidefinite(c1, c2, delta));
        c.expect(!r.bounded_above, "c2 = " + fmt(c2) + " must be unbounded");
      }
    }
  }
  for (double c1 : {-3.0, -2.0, -1.5, 0.0, 0.5, 1.0, 2.0, 2.01, 4.0}) {
    for (double delta : {0.0, 1.0}) {
      const BoundednessReport r = boundedness_report(fixtures::semidefinite(c1, 0.0, delta));
      c.expect(r.bounded_above == (c1 * c1 <= 4.0), "c1 = " + fmt(c1) + " boundedness");
      c.expect(r.q && std::abs(*r.q - c1 * c1 / 4.0) <= 1e-12, "q for c1 = " + fmt(c1));
    }
  }
}

void ac6(Check& c) {
  const CanonicalForm base{vec({0.5, 0}), 0.25, 0.8, mat({{1, 0}, {0, 0}}), vec({1, 0})};
  for (double a : {-3.0, 7.0}) {
    CanonicalForm moved = base;
    moved.x_star = vec({1, a});
    c.expect(socf_equal(base, moved), "x* = (1, " + fmt(a) + ") equal");
  }
  oracle::Rng rng(2024);
  auto differs = [&](const CanonicalForm& h) {
    for (int k = 0; k < 100; ++k) {
      const Vector x = 3.0 * oracle::random_normal(rng, 2);
      if (std::abs(eval_canonical(base, x) - eval_canonical(h, x)) > 1e-9) return true;
    }
    return false;
  };
  CanonicalForm m_pert = base;
  m_pert.M(0, 0) += 1e-3;
  c.expect(!socf_equal(base, m_pert), "perturbed M compares unequal");
  c.expect(differs(m_pert), "perturbed M differs under evaluation");
  CanonicalForm m_pert2 = base;
  m_pert2.M(1, 1) += 1e-3;
  c.expect(!socf_equal(base, m_pert2), "perturbed null block compares unequal");
  c.expect(differs(m_pert2), "perturbed null block differs under evaluation");
  CanonicalForm d_pert = base;
  d_pert.delta += 1e-3;
  c.expect(!socf_equal(base, d_pert), "perturbed delta compares unequal");
  c.expect(differs(d_pert), "perturbed delta differs under evaluation");
}

void ac7(Check& c) {
  const auto t0 = Clock::now();
  oracle::Rng rng(7);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::string tag = "instance " + std::to_string(trial) + ": ";
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const GeneralForm f = oracle::random_general(rng, n);
    const CanonicalForm gf = canonicalize(f);
    for (int k = 0; k < 20; ++k) {
      const Vector x = 2.0 * oracle::random_normal(rng, n);
      const double want = eval_general(f, x);
      if (std::abs(eval_canonical(gf, x) - want) > 1e-9 * std::max(1.0, std::abs(want))) {
        c.expect(false, tag + "evaluator equivalence");
        break;
      }
    }
    const Matrix q = oracle::random_orthogonal(rng, f.rows());
    c.expect(socf_equal(gf, canonicalize(GeneralForm{f.c, f.d, q * f.A, q * f.b})),
             tag + "orthogonal invariance");

    const CanonicalForm g = oracle::random_canonical(rng);
    c.expect(socf_equal(canonicalize(reconstruct(g)), g), tag + "round trip");
    oracle::ProbeConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial);
    c.expect(oracle::concavity_probe(g, cfg).consistent, tag + "concavity probe");
    const BoundednessReport r = boundedness_report(g);
    if (!r.boundary_flag) {
      ++compared;
      c.expect(oracle::boundedness_probe(g, cfg).claims_bounded == r.bounded_above,
               tag + "boundedness probe vs report");
    }
    for (int k = 0; k < 5; ++k) {
      const Vector x = g.x_star + 2.0 * oracle::random_normal(rng, g.dim());
      const Vector u = x - g.x_star;
      if (g.delta == 0.0 && u.dot(g.M * u) < 1e-2) continue;
      const Vector grad = gradient(g, x);
      const Vector fd = oracle::finite_diff_gradient(g, x, 1e-5);
      c.expect((grad - fd).norm() <= 1e-6 * std::max(1.0, grad.norm()), tag + "FD gradient");
      const Matrix h = hessian(g, x);
      const Matrix fdh = oracle::finite_diff_hessian(g, x, 1e-4);
      c.expect((h - fdh).norm() <= 1e-5 * std::max(1.0, h.norm()), tag + "FD Hessian");
    }
  }
  // Boundary-flagged draws are exempt; keep drawing until 200 instances were compared.
  for (int extra = 0; compared < 200 && extra < 10000; ++extra) {
    const CanonicalForm g = oracle::random_canonical(rng);
    const BoundednessReport r = boundedness_report(g);
    if (r.boundary_flag) continue;
    ++compared;
    oracle::ProbeConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(1000 + extra);
    c.expect(oracle::boundedness_probe(g, cfg).claims_bounded == r.bounded_above,
             "extra instance " + std::to_string(extra) + ": boundedness probe vs report");
  }
  c.expect(compared >= 200, "only " + std::to_string(compared) + " non-boundary instances");
  const double t = seconds_since(t0);
  c.expect(t < 10.0, "runtime " + fmt(t) + " s");
}

void ac8(Check& c) {
  const CanonicalForm norm{vec({0, 0}), 0.0, 0.0, Matrix::Identity(2, 2), vec({0, 0})};
  c.expect(region_class(norm).kind == RegionKind::Singleton, "-||x|| is a singleton");
  c.expect(region_class(fixtures::six_case(0.7, 1.0)).kind == RegionKind::Empty, "PD4 d = 0 empty");

  CanonicalForm lifted = fixtures::six_case(0.7, 1.0);
  lifted.d = 1.0;
  const BoundednessReport r = boundedness_report(lifted);
  c.expect(region_class(lifted, r).kind == RegionKind::CompactWithInterior, "PD4 d = 1 compact");
  // f(x) <= (c^T x* + d) - (1 - sqrt q) sqrt(lambda_min) ||x - x*||.
  const double lmin = linalg::sym_eigen(lifted.M).eigenvalues(0);
  const double top = lifted.c.dot(lifted.x_star) + lifted.d;
  const double radius = 1.0 + 1.5 * top / ((1.0 - std::sqrt(*r.q)) * std::sqrt(lmin));
  oracle::Rng rng(8);
  bool outside_infeasible = true;
  for (int k = 0; k < 2000; ++k) {
    const Vector x = lifted.x_star + radius * oracle::random_unit(rng, 2);
    if (eval_canonical(lifted, x) >= 0.0) outside_infeasible = false;
  }
  c.expect(outside_infeasible, "exterior sphere of radius " + fmt(radius) + " infeasible");
  c.expect(eval_canonical(lifted, r.critical_set.base) > 0.0, "interior point feasible");

  const CanonicalForm semi = fixtures::semidefinite(1.0, 0.0, 1.0, 5.0);
  const BoundednessReport sr = boundedness_report(semi);
  c.expect(region_class(semi, sr).kind == RegionKind::UnboundedNonempty, "semidefinite d = 5");
  bool stays = sr.critical_set.null_basis.cols() == 1;
  for (double t : {-1e4, -1.0, 1.0, 1e4}) {
    if (!stays) break;
    stays = eval_canonical(semi, sr.critical_set.base + t * sr.critical_set.null_basis.col(0)) >= 0.0;
  }
  c.expect(stays, "null-space translates stay feasible");
}

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

void ac9(Check& c) {
  const std::string dir = SOCF_DATA_DIR;
  const auto tmp = std::filesystem::temp_directory_path() /
                   ("socf_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(tmp);
  const std::string typo = (tmp / "typo.json").string();
  std::ofstream(typo) << R"({"form": "general", "c": [1], "dd": 0, "A": [[1]], "b": [0]})";
  const std::string shape = (tmp / "shape.json").string();
  std::ofstream(shape) << R"({"form": "general", "c": [1, 2], "d": 0, "A": [[1]], "b": [0]})";

  c.expect(run_cli({"classify", dir + "/six_case_pd4.json"}) == 0, "exit 0 on classify");
  c.expect(run_cli({"check", dir + "/six_case_pd4.json"}) == 0, "exit 0 on consistent probes");
  c.expect(run_cli({"check", dir + "/near_vertex.json"}) == 1, "exit 1 on probe contradiction");
  c.expect(run_cli({"canonicalize", typo}) == 2, "exit 2 on malformed field");
  c.expect(run_cli({"classify", shape}) == 3, "exit 3 on dimension mismatch");
  c.expect(run_cli({"eval", dir + "/cone_gallery_b.json", "--at", "1"}) == 3, "exit 3 on bad point");

  std::string csv;
  c.expect(run_cli({"contour", dir + "/cone_gallery_b.json", "--xrange=-1:1", "--yrange=-1:1",
                    "--nx", "3", "--ny", "3"},
                   &csv) == 0,
           "contour exit 0");
  const CanonicalForm g = canonicalize(fixtures::gallery_b());
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  c.expect(line == "x,y,f", "CSV header");
  int rows = 0;
  while (std::getline(in, line)) {
    double x = 0, y = 0, f = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &f) != 3) {
      c.expect(false, "unparseable row '" + line + "'");
      continue;
    }
    ++rows;
    c.expect(f == eval_canonical(g, vec({x, y})), "row '" + line + "' not bit-exact");
  }
  c.expect(rows == 9, "row count " + std::to_string(rows));
  std::filesystem::remove_all(tmp);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"AC1 canonicalization of the 3x2 example", ac1},
      {"AC2 six-case classification", ac2},
      {"AC3 PD4 maximum", ac3},
      {"AC4 strict-concavity table", ac4},
      {"AC5 semidefinite boundedness", ac5},
      {"AC6 uniqueness and equality", ac6},
      {"AC7 seeded property suite", ac7},
      {"AC8 region classification", ac8},
      {"AC9 CLI contract", ac9},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    const auto t0 = Clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    std::printf("[%s] %s (%.3f s)\n", c.failures.empty() ? "PASS" : "FAIL", name.c_str(), t);
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) {
      std::printf("       %s\n", c.failures[i].c_str());
    }
    if (!c.failures.empty()) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
