#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstring>
#include <vector>

#include "anisobesov/anisotropy.hpp"
#include "anisobesov/approx.hpp"
#include "anisobesov/besov.hpp"
#include "anisobesov/errors.hpp"
#include "anisobesov/extremal.hpp"
#include "anisobesov/field.hpp"
#include "anisobesov/serialization.hpp"
#include "anisobesov/spectral.hpp"

namespace py = pybind11;
using namespace anisobesov;

namespace {

using ComplexArray =
    py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

// Grid storage is row-major with axis 0 outermost, matching numpy C order.
SampledField to_field(const GridSpec& grid, const ComplexArray& values) {
  if (static_cast<std::size_t>(values.size()) != grid.total()) {
    throw validation_error("value count does not match the grid");
  }
  SampledField f = zero_field(grid);
  std::memcpy(f.values.data(), values.data(),
              grid.total() * sizeof(std::complex<double>));
  return f;
}

py::array to_array(const GridSpec& grid,
                   const std::vector<std::complex<double>>& values) {
  std::vector<py::ssize_t> shape(grid.samples.begin(), grid.samples.end());
  py::array_t<std::complex<double>> out(shape);
  std::memcpy(out.mutable_data(), values.data(),
              values.size() * sizeof(std::complex<double>));
  return out;
}

AnisotropyProfile profile_of(const std::vector<double>& r) {
  return make_profile(r);
}

BesovParams params_of(const std::vector<double>& r, double p, double theta,
                      int s_max, double residual_tol, const GridSpec& grid) {
  BesovParams params;
  params.profile = make_profile(r);
  params.p = p;
  params.theta = theta;
  params.s_max =
      s_max >= 0 ? s_max : feasible_layer_count(params.profile, grid);
  params.residual_tol = residual_tol;
  return params;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Anisotropic dyadic frequency layering, layerwise smoothness norms and "
      "band-limited approximation";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const validation_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const guard_error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  py::class_<GridSpec>(m, "Grid")
      .def(py::init([](std::vector<double> half_width,
                       std::vector<int> samples) {
             return make_grid(std::move(half_width), std::move(samples));
           }),
           py::arg("half_width"), py::arg("samples"))
      .def_readonly("half_width", &GridSpec::half_width)
      .def_readonly("samples", &GridSpec::samples)
      .def_property_readonly("dim", &GridSpec::dim)
      .def("step", &GridSpec::step, py::arg("axis"))
      .def("freq_step", &GridSpec::freq_step, py::arg("axis"))
      .def("nyquist", &GridSpec::nyquist, py::arg("axis"))
      .def("points",
           [](const GridSpec& g, int axis) {
             py::array_t<double> out(g.samples.at(axis));
             for (int i = 0; i < g.samples[axis]; ++i) {
               out.mutable_at(i) = g.point(axis, i);
             }
             return out;
           },
           py::arg("axis"), "sample coordinates along one axis")
      .def("frequencies",
           [](const GridSpec& g, int axis) {
             py::array_t<double> out(g.samples.at(axis));
             for (int i = 0; i < g.samples[axis]; ++i) {
               out.mutable_at(i) = g.frequency(axis, i);
             }
             return out;
           },
           py::arg("axis"), "frequency lattice along one axis")
      .def("__repr__", [](const GridSpec& g) {
        return "Grid(d=" + std::to_string(g.dim()) + ")";
      });

  py::class_<AnisotropyProfile>(m, "Profile")
      .def(py::init(&profile_of), py::arg("r"))
      .def_readonly("r", &AnisotropyProfile::r)
      .def_readonly("g", &AnisotropyProfile::g)
      .def_readonly("a", &AnisotropyProfile::a)
      .def_readonly("b", &AnisotropyProfile::b)
      .def("layer_bound", &AnisotropyProfile::layer_bound, py::arg("axis"),
           py::arg("s"));

  m.def(
      "forward_transform",
      [](const GridSpec& grid, const ComplexArray& values) {
        return to_array(grid, forward_transform(to_field(grid, values)).coeffs);
      },
      py::arg("grid"), py::arg("values"),
      "unitary transform to coefficients on the frequency lattice");

  m.def(
      "inverse_transform",
      [](const GridSpec& grid, const ComplexArray& coeffs) {
        SpectralField c{grid, std::vector<std::complex<double>>(
                                  coeffs.data(), coeffs.data() + coeffs.size())};
        if (c.coeffs.size() != grid.total()) {
          throw validation_error("coefficient count does not match the grid");
        }
        return to_array(grid, inverse_transform(c).values);
      },
      py::arg("grid"), py::arg("coeffs"));

  m.def(
      "lp_norm",
      [](const GridSpec& grid, const ComplexArray& values, double p) {
        return lp_norm(to_field(grid, values), p);
      },
      py::arg("grid"), py::arg("values"), py::arg("p"));

  m.def(
      "fourier_section",
      [](const GridSpec& grid, const ComplexArray& values,
         const std::vector<double>& bounds) {
        return to_array(
            grid, fourier_section(to_field(grid, values), make_box(bounds))
                      .values);
      },
      py::arg("grid"), py::arg("values"), py::arg("bounds"),
      "band limitation onto the open frequency box");

  m.def(
      "layer_decompose",
      [](const GridSpec& grid, const ComplexArray& values,
         const std::vector<double>& r, int s_max) {
        const AnisotropyProfile profile = make_profile(r);
        const int top =
            s_max >= 0 ? s_max : feasible_layer_count(profile, grid);
        const LayerStack stack =
            layer_decompose(to_field(grid, values), profile, top);
        py::list layers;
        for (const SampledField& layer : stack.layers) {
          layers.append(to_array(grid, layer.values));
        }
        py::dict out;
        out["layers"] = layers;
        out["residual"] = to_array(grid, stack.residual.values);
        out["s_max"] = top;
        return out;
      },
      py::arg("grid"), py::arg("values"), py::arg("r"), py::arg("s_max") = -1);

  m.def(
      "feasible_layer_count",
      [](const std::vector<double>& r, const GridSpec& grid) {
        return feasible_layer_count(make_profile(r), grid);
      },
      py::arg("r"), py::arg("grid"));

  m.def(
      "block_norm",
      [](const GridSpec& grid, const ComplexArray& values,
         const std::vector<double>& r, double p, double theta, int s_max,
         double residual_tol) {
        return block_norm(to_field(grid, values),
                          params_of(r, p, theta, s_max, residual_tol, grid));
      },
      py::arg("grid"), py::arg("values"), py::arg("r"), py::arg("p") = 2.0,
      py::arg("theta") = 1.0, py::arg("s_max") = -1,
      py::arg("residual_tol") = 0.05,
      "layerwise norm; s_max = -1 uses the grid's feasible depth");

  m.def(
      "definition_norm",
      [](const GridSpec& grid, const ComplexArray& values,
         const std::vector<double>& r, double p, double theta, int s_max,
         double residual_tol, int dyadic_levels) {
        DefinitionNormOptions opts;
        opts.dyadic_levels = dyadic_levels;
        return definition_norm(
            to_field(grid, values),
            params_of(r, p, theta, s_max, residual_tol, grid), opts);
      },
      py::arg("grid"), py::arg("values"), py::arg("r"), py::arg("p") = 2.0,
      py::arg("theta") = 1.0, py::arg("s_max") = -1,
      py::arg("residual_tol") = 0.05, py::arg("dyadic_levels") = 12,
      "modulus-based norm (d <= 2)");

  m.def(
      "modulus_of_smoothness",
      [](const GridSpec& grid, const ComplexArray& values, int order, int axis,
         double t, double p) {
        const ModulusResult res =
            modulus_of_smoothness(to_field(grid, values), order, axis, t, p);
        return py::make_tuple(res.value, res.shift_representable);
      },
      py::arg("grid"), py::arg("values"), py::arg("order"), py::arg("axis"),
      py::arg("t"), py::arg("p"),
      "returns (value, shift_representable)");

  m.def(
      "spectral_derivative",
      [](const GridSpec& grid, const ComplexArray& values, int axis,
         int order) {
        return to_array(
            grid, spectral_derivative(to_field(grid, values), axis, order)
                      .values);
      },
      py::arg("grid"), py::arg("values"), py::arg("axis"),
      py::arg("order") = 1);

  m.def(
      "truncation_error",
      [](const GridSpec& grid, const ComplexArray& values,
         const std::vector<double>& r, int n, double q) {
        return truncation_error(to_field(grid, values), make_profile(r), n, q);
      },
      py::arg("grid"), py::arg("values"), py::arg("r"), py::arg("n"),
      py::arg("q") = 2.0);

  m.def(
      "theoretical_rate",
      [](const std::vector<double>& r, double p, double q) {
        const TheoreticalRate rate = theoretical_rate(make_profile(r), p, q);
        return py::make_tuple(rate.value, rate.feasible);
      },
      py::arg("r"), py::arg("p"), py::arg("q"),
      "returns (exponent, feasible)");

  m.def("sinc_lp_constant", &sinc_lp_constant, py::arg("p"));

  m.def(
      "shell_field",
      [](const std::vector<double>& r, int k, const GridSpec& grid) {
        return to_array(grid, shell_field(make_profile(r), k, grid).values);
      },
      py::arg("r"), py::arg("k"), py::arg("grid"),
      "sampled sinc-product difference for shell k");

  m.def(
      "shell_indicator_field",
      [](const std::vector<double>& r, int k, const GridSpec& grid) {
        return to_array(grid,
                        shell_indicator_field(make_profile(r), k, grid).values);
      },
      py::arg("r"), py::arg("k"), py::arg("grid"),
      "field whose transform is exactly the shell indicator");

  m.def(
      "lower_bound_witness",
      [](const std::vector<double>& r, int n, double p, const GridSpec& grid,
         const std::string& construction) {
        WitnessConstruction mode;
        if (construction == "spectral") {
          mode = WitnessConstruction::spectral;
        } else if (construction == "sinc") {
          mode = WitnessConstruction::sinc;
        } else {
          throw validation_error("construction must be spectral or sinc");
        }
        const LowerBoundWitness w =
            lower_bound_witness(make_profile(r), n, p, grid, mode);
        py::dict out;
        out["field"] = to_array(grid, w.field.values);
        out["c1"] = w.c1;
        out["prefactor"] = w.prefactor;
        return out;
      },
      py::arg("r"), py::arg("n"), py::arg("p"), py::arg("grid"),
      py::arg("construction") = "spectral");

  m.def(
      "nikolskii_check",
      [](const GridSpec& grid, const ComplexArray& values,
         const std::vector<double>& nu, double p1, double p2) {
        const NikolskiiCheck check =
            nikolskii_check(to_field(grid, values), nu, p1, p2);
        py::dict out;
        out["lhs"] = check.lhs;
        out["rhs"] = check.rhs;
        out["ratio"] = check.ratio;
        out["pass"] = check.pass;
        return out;
      },
      py::arg("grid"), py::arg("values"), py::arg("nu"), py::arg("p1"),
      py::arg("p2"));

  m.def(
      "random_band_limited",
      [](const GridSpec& grid, const std::vector<double>& nu,
         std::uint64_t seed) {
        return to_array(grid, random_band_limited(grid, nu, seed).values);
      },
      py::arg("grid"), py::arg("nu"), py::arg("seed") = 1);

  m.def(
      "save_field",
      [](const GridSpec& grid, const ComplexArray& values,
         const std::string& path) {
        save_field(to_field(grid, values), path);
      },
      py::arg("grid"), py::arg("values"), py::arg("path"));

  m.def(
      "load_field",
      [](const std::string& path) {
        const SampledField f = load_field(path);
        return py::make_tuple(f.grid, to_array(f.grid, f.values));
      },
      py::arg("path"), "returns (grid, values)");
}
