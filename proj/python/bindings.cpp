#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nlslab/conserved.hpp"
#include "nlslab/harness.hpp"
#include "nlslab/morawetz.hpp"
#include "nlslab/spectral.hpp"

namespace py = pybind11;
using namespace nlslab;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexField to_field(const CArray& a, double length) {
  const auto dim = static_cast<int>(a.ndim());
  if (dim < 1 || dim > 3) throw DataError("expected a 1, 2 or 3 dimensional array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  for (int d = 1; d < dim; ++d)
    if (static_cast<std::size_t>(a.shape(d)) != n) throw DataError("grid must have equal axes");
  ComplexField f(Grid(dim, n, length));
  std::copy(a.data(), a.data() + a.size(), f.data());
  return f;
}

CArray to_array(const ComplexField& f) {
  std::vector<py::ssize_t> shape(f.grid().dim(), static_cast<py::ssize_t>(f.grid().points_per_axis()));
  CArray out(shape);
  std::copy(f.data(), f.data() + f.size(), out.mutable_data());
  return out;
}

py::dict manifest_dict(const RunManifest& m) {
  py::dict d;
  d["run_id"] = m.run_id;
  d["name"] = m.name;
  d["outcome"] = to_string(m.outcome);
  d["classification"] = to_string(m.classification);
  d["stop_reason"] = m.stop_reason;
  d["t_final"] = m.t_final;
  d["criterion"] = m.criterion_verdict;
  d["regime_flags"] = m.regime_flags;
  d["checksums"] = m.checksums;
  d["directory"] = m.directory.string();
  d["config"] = m.config_text;
  return d;
}

Exponent exponent(const py::object& v) {
  if (v.is_none()) return Exponent::infinity();
  if (py::isinstance<py::tuple>(v)) {
    const auto t = v.cast<std::pair<std::int64_t, std::int64_t>>();
    return Exponent(t.first, t.second);
  }
  return Exponent(v.cast<std::int64_t>(), 1);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudo-spectral NLS simulation and diagnostics";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<DataError>(m, "DataError", base);
  py::register_exception<InapplicableError>(m, "InapplicableError", base);
  py::register_exception<UnavailableError>(m, "UnavailableError", base);
  py::register_exception<DegenerateFitError>(m, "DegenerateFitError", base);

  m.def("list_presets", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : list_presets()) out.emplace_back(p.name, p.description);
    return out;
  });
  m.def(
      "canonical_config", [](const std::string& text) { return to_config_text(parse_config_text(text)); },
      py::arg("text"), "Parses config text and returns its canonical form.");
  m.def(
      "preset_config", [](const std::string& name) { return to_config_text(preset(name)); },
      py::arg("name"));
  m.def(
      "run_id", [](const std::string& text) { return run_id_for(parse_config_text(text)); },
      py::arg("text"));

  m.def(
      "run",
      [](const std::string& text, const std::string& out_root, bool write) {
        const auto cfg = parse_config_text(text);
        py::gil_scoped_release release;
        auto man = run_scenario(cfg, {out_root, write});
        py::gil_scoped_acquire acquire;
        return manifest_dict(man);
      },
      py::arg("text"), py::arg("out_root") = "", py::arg("write") = true);
  m.def(
      "read_manifest", [](const std::string& dir) { return manifest_dict(read_manifest(dir)); },
      py::arg("directory"));
  m.def(
      "classify", [](const std::string& dir) { return to_string(classify_run_dir(dir)); },
      py::arg("directory"));
  m.def(
      "sweep",
      [](const std::string& text, std::size_t workers, const std::string& out_root) {
        const auto spec = parse_sweep_text(text);
        SweepResult res;
        {
          py::gil_scoped_release release;
          res = sweep(spec, workers, {out_root, true});
        }
        py::list out;
        for (const auto& e : res.entries) {
          py::dict d;
          d["index"] = e.index;
          d["run_id"] = e.run_id;
          d["overrides"] = e.overrides;
          d["error"] = e.error;
          d["manifest"] = e.manifest ? py::object(manifest_dict(*e.manifest)) : py::none();
          out.append(d);
        }
        return out;
      },
      py::arg("text"), py::arg("workers") = 1, py::arg("out_root") = "");

  m.def(
      "transform",
      [](const CArray& a, double length, bool inverse) {
        return to_array(transform(to_field(a, length), inverse ? Direction::inverse : Direction::forward));
      },
      py::arg("u"), py::arg("length"), py::arg("inverse") = false);
  m.def(
      "free_propagate",
      [](const CArray& a, double length, double t) { return to_array(free_propagate(to_field(a, length), t)); },
      py::arg("u"), py::arg("length"), py::arg("t"));
  m.def(
      "mass", [](const CArray& a, double length) { return mass(to_field(a, length)); }, py::arg("u"),
      py::arg("length"));
  m.def(
      "energy",
      [](const CArray& a, double length, double lambda1, double lambda2, double p1, double p2) {
        const auto r = energy(to_field(a, length), Nonlinearity{lambda1, lambda2, p1, p2});
        py::dict d;
        d["mass"] = r.mass;
        d["energy"] = r.energy;
        d["kinetic"] = r.kinetic;
        d["potential1"] = r.potential1;
        d["potential2"] = r.potential2;
        return d;
      },
      py::arg("u"), py::arg("length"), py::arg("lambda1") = 1.0, py::arg("lambda2") = 1.0,
      py::arg("p1") = 2.0, py::arg("p2") = 4.0);
  m.def(
      "admissible",
      [](const py::object& q, const py::object& r, int n) { return admissible_pair(exponent(q), exponent(r), n); },
      py::arg("q"), py::arg("r"), py::arg("n"),
      "q and r are integers, (num, den) tuples, or None for infinity.");
  m.def("sha256", &sha256_hex, py::arg("data"));
}
