#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/eigen.h>

#include <optional>
#include <string>

#include "xyvort/degree.hpp"
#include "xyvort/error.hpp"
#include "xyvort/hamiltonian.hpp"
#include "xyvort/runner.hpp"
#include "xyvort/spectral.hpp"
#include "xyvort/vorticity.hpp"

namespace py = pybind11;
using namespace xyvort;

namespace {

TraceSlot parse_slot(const std::string& s) {
  if (s == "first") return TraceSlot::First;
  if (s == "second") return TraceSlot::Second;
  if (s == "both") return TraceSlot::Both;
  throw ValidationError("trace slot must be first, second or both");
}

DegreeForm parse_form(const std::string& s) {
  if (s == "left") return DegreeForm::Left;
  if (s == "right") return DegreeForm::Right;
  if (s == "sym") return DegreeForm::Symmetrized;
  throw ValidationError("form must be left, right or sym");
}

std::optional<BoundaryCondition> condition(const Lattice& l, std::optional<int> degree, double phase) {
  if (l.free()) {
    if (degree) throw ValidationError("a free lattice takes no boundary degree");
    return std::nullopt;
  }
  return boundary_angles(l, degree.value_or(0), phase);
}

SpectralData solve(const Lattice& l, double n, double k, std::optional<int> degree, double phase) {
  return diagonalize(assemble(l, {n, k}, condition(l, degree, phase)));
}

py::dict field_dict(const VorticityField& f) {
  const auto size = static_cast<Eigen::Index>(f.size());
  Eigen::MatrixXd omega(size, 3);
  Eigen::VectorXd angle(size), magnitude(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const auto& s = f.sites[static_cast<std::size_t>(i)];
    omega.row(i) << s.omega(0, 0), s.omega(0, 1), s.omega(1, 1);
    angle(i) = s.cross.angle;
    magnitude(i) = s.cross.magnitude;
  }
  py::dict d;
  d["omega"] = omega;
  d["angle"] = angle;
  d["magnitude"] = magnitude;
  d["beta"] = f.beta;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Anisotropic XY block Hamiltonian simulator";
  m.attr("__version__") = kVersion;
  m.attr("DEFAULT_PHASE") = kDefaultPhase;

  py::register_exception<CalibrationError>(m, "CalibrationError", PyExc_RuntimeError);

  py::class_<Lattice>(m, "Lattice")
      .def(py::init([](int w, int h, int b) { return Lattice({w, h, b}); }), py::arg("inner_width"),
           py::arg("inner_height"), py::arg("boundary_layers") = 2)
      .def_property_readonly("size", &Lattice::size)
      .def_property_readonly("width", &Lattice::width)
      .def_property_readonly("height", &Lattice::height)
      .def_property_readonly("free", &Lattice::free)
      .def_property_readonly("boundary_count", &Lattice::boundary_count)
      .def("index_of", &Lattice::index_of, py::arg("col"), py::arg("row"))
      .def("ring", &Lattice::ring, py::arg("index"))
      .def("coords", [](const Lattice& l, std::size_t i) { return std::make_pair(l.site(i).col, l.site(i).row); })
      .def("layer", [](const Lattice& l, std::size_t i) { return l.site(i).layer; })
      .def("contour", [](const Lattice& l, int mm) { return l.contour_at(mm).sites; }, py::arg("m"))
      .def("bond_counts", [](const Lattice& l) {
        py::dict d;
        int bb = 0, bd = 0, dd = 0;
        for (const auto& b : l.bonds()) {
          if (b.kind == BondKind::BulkBulk) ++bb;
          else if (b.kind == BondKind::BulkBoundary) ++bd;
          else ++dd;
        }
        d["bulk_bulk"] = bb;
        d["bulk_boundary"] = bd;
        d["boundary_boundary"] = dd;
        return d;
      });

  m.def("hamiltonian",
        [](const Lattice& l, double n, double k, std::optional<int> degree, double phase) {
          return assemble(l, {n, k}, condition(l, degree, phase)).dense();
        },
        py::arg("lattice"), py::arg("n") = 1.0, py::arg("k") = 1.0, py::arg("degree") = py::none(),
        py::arg("phase") = kDefaultPhase, "Dense 4N x 4N Hamiltonian.");

  m.def("eigenvalues",
        [](const Lattice& l, double n, double k, std::optional<int> degree, double phase) {
          return solve(l, n, k, degree, phase).eigenvalues;
        },
        py::arg("lattice"), py::arg("n") = 1.0, py::arg("k") = 1.0, py::arg("degree") = py::none(),
        py::arg("phase") = kDefaultPhase, "Ascending eigenvalues of the Hamiltonian.");

  m.def("vorticity",
        [](const Lattice& l, double beta, double n, double k, std::optional<int> degree, double phase,
           const std::string& slot) {
          const auto sp = solve(l, n, k, degree, phase);
          return field_dict(vorticity_field(gibbs(sp, beta), l, parse_slot(slot)));
        },
        py::arg("lattice"), py::arg("beta") = 1.0, py::arg("n") = 1.0, py::arg("k") = 1.0,
        py::arg("degree") = py::none(), py::arg("phase") = kDefaultPhase, py::arg("slot") = "both",
        "Per-site vorticity matrices (omega11, omega12, omega22), cross angles and magnitudes.");

  m.def("contour_degree",
        [](const Lattice& l, int degree, int contour_m, double beta, double n, double k, double phase,
           const std::string& form) {
          const auto sp = solve(l, n, k, degree, phase);
          const auto field = vorticity_field(gibbs(sp, beta), l);
          const auto est = degree_estimate(field_on_contour(field, l.contour_at(contour_m)),
                                           {.form = parse_form(form), .skip_degenerate = true});
          py::dict d;
          d["estimate"] = est.value;
          d["degenerate_steps"] = est.degenerate_steps;
          d["contour_len"] = est.contour_len;
          return d;
        },
        py::arg("lattice"), py::arg("degree"), py::arg("contour_m") = 1, py::arg("beta") = 1.0,
        py::arg("n") = 1.0, py::arg("k") = 1.0, py::arg("phase") = kDefaultPhase, py::arg("form") = "sym");

  m.def("analytic_degree",
        [](int d, std::size_t points, double phase, const std::string& form) {
          return degree_estimate(analytic_field(circle_points(points), d, phase), {.form = parse_form(form)}).value;
        },
        py::arg("d"), py::arg("points") = 200, py::arg("phase") = 0.0, py::arg("form") = "sym",
        "Degree estimate for the exact director field of degree d on a circle.");

  m.def("presets", &preset_names);

  m.def("run",
        [](const std::string& command, const std::string& config_json, const std::string& out) {
          auto cfg = parse_config(nlohmann::json::parse(config_json));
          if (!out.empty()) cfg.outputs = out;
          Runner r(cfg);
          nlohmann::json summary;
          if (command == "spectrum") summary = r.spectrum();
          else if (command == "vorticity") summary = r.vorticity();
          else if (command == "degree") summary = r.degree();
          else if (command == "table1") summary = r.table1();
          else if (command == "antiferro") summary = r.antiferro();
          else if (command == "oracle") summary = r.oracle();
          else throw ValidationError("unknown command '" + command + "'");
          return summary.dump();
        },
        py::arg("command"), py::arg("config_json"), py::arg("out") = "",
        "Run a CLI command from a JSON config string; returns the summary as JSON text.");
}
