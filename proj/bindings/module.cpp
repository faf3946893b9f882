#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>

#include "gdiscord/discord.hpp"
#include "gdiscord/protocol.hpp"
#include "gdiscord/state_io.hpp"
#include "gdiscord/symplectic.hpp"
#include "gdiscord/validate.hpp"

namespace py = pybind11;
using namespace gdiscord;

namespace {

OptimOptions seeded(std::uint64_t seed) {
  OptimOptions opts;
  opts.seed = seed;
  return opts;
}

TwoModeCov cov_from(const Mat4& m) { return TwoModeCov::from_matrix(m); }

}  // namespace

PYBIND11_MODULE(gdiscord, m) {
  m.doc() = "Gaussian discord measures for two-mode states";

  py::class_<LocalMeasurement>(m, "LocalMeasurement")
      .def(py::init<double, double>(), py::arg("theta"), py::arg("l"))
      .def_readonly("theta", &LocalMeasurement::theta)
      .def_readonly("l", &LocalMeasurement::l)
      .def("__repr__", [](const LocalMeasurement& s) {
        return "LocalMeasurement(theta=" + format_g12(s.theta) + ", l=" + format_g12(s.l) + ")";
      });

  py::class_<JointMeasurement>(m, "JointMeasurement")
      .def(py::init<double, double, double, LocalMeasurement, LocalMeasurement>(),
           py::arg("phi_a"), py::arg("phi_b"), py::arg("eta"), py::arg("m_a"), py::arg("m_b"))
      .def_readonly("phi_a", &JointMeasurement::phi_a)
      .def_readonly("phi_b", &JointMeasurement::phi_b)
      .def_readonly("eta", &JointMeasurement::eta)
      .def_readonly("m_a", &JointMeasurement::m_a)
      .def_readonly("m_b", &JointMeasurement::m_b);

  py::class_<DiscordReport>(m, "DiscordReport")
      .def_readonly("ogd", &DiscordReport::ogd)
      .def_readonly("gqd", &DiscordReport::gqd)
      .def_readonly("renyi2", &DiscordReport::renyi2)
      .def_readonly("hmin_local", &DiscordReport::hmin_local)
      .def_readonly("hmin_joint", &DiscordReport::hmin_joint)
      .def_readonly("opt_local_a", &DiscordReport::opt_local_a)
      .def_readonly("opt_local_b", &DiscordReport::opt_local_b)
      .def_readonly("opt_joint", &DiscordReport::opt_joint)
      .def_readonly("det_local", &DiscordReport::det_local)
      .def_readonly("det_joint", &DiscordReport::det_joint)
      .def_readonly("clamped", &DiscordReport::clamped);

  py::class_<ClosedFormOgd>(m, "ClosedFormOgd")
      .def_readonly("value", &ClosedFormOgd::value)
      .def_readonly("det_local", &ClosedFormOgd::det_local)
      .def_readonly("det_joint", &ClosedFormOgd::det_joint)
      .def_readonly("branch", &ClosedFormOgd::branch);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("criterion", &CheckResult::criterion)
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::pass)
      .def_readonly("detail", &CheckResult::detail);

  m.def(
      "standard_cov",
      [](double a, double b, double c, double d) { return make_standard_cov(a, b, c, d).mat(); },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
      "4x4 covariance in standard form (diag blocks aI, bI, off-diag diag(c, d))");

  m.def(
      "family_cov",
      [](const std::string& variant, const std::map<std::string, double>& params) {
        return family_cov(make_family(variant, params)).mat();
      },
      py::arg("variant"), py::arg("params"),
      "covariance of a benchmark family point, e.g. ('symmetric_t', {'a': 10, 't': 1})");

  m.def(
      "closed_form_ogd",
      [](const std::string& variant, const std::map<std::string, double>& params) {
        return closed_form_ogd(make_family(variant, params));
      },
      py::arg("variant"), py::arg("params"));

  m.def(
      "symplectic_eigenvalues",
      [](const Mat4& cov) { return symplectic_eigenvalues(cov_from(cov)); }, py::arg("cov"));

  m.def(
      "is_physical", [](const Mat4& cov) { return physicality_check(cov_from(cov)); },
      py::arg("cov"));

  m.def(
      "ogd", [](const Mat4& cov, std::uint64_t seed) { return ogd(cov_from(cov), seeded(seed)); },
      py::arg("cov"), py::arg("seed") = 0,
      "full discord report (ogd, gqd, renyi2, optimal measurements)");

  m.def(
      "gqd",
      [](const Mat4& cov, std::uint64_t seed) { return gqd(cov_from(cov), seeded(seed)).value; },
      py::arg("cov"), py::arg("seed") = 0);

  m.def(
      "renyi2_discord",
      [](const Mat4& cov, std::uint64_t seed) {
        return renyi2_discord(cov_from(cov), seeded(seed)).value;
      },
      py::arg("cov"), py::arg("seed") = 0);

  m.def(
      "mutual_info",
      [](const Mat4& cov, double vs, std::uint64_t seed) {
        const MutualInfoReport r = mutual_info_report(cov_from(cov), vs, seeded(seed));
        return py::make_tuple(r.i_local, r.i_joint, r.gap);
      },
      py::arg("cov"), py::arg("vs"), py::arg("seed") = 0,
      "(i_local, i_joint, gap) for one encoding noise level");

  m.def(
      "validate",
      [](std::uint64_t seed, bool inject_failure) {
        return run_validation(seed, inject_failure).checks;
      },
      py::arg("seed") = 0, py::arg("inject_failure") = false);
}
