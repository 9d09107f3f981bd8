#include <optional>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rchroma/cascade.hpp"
#include "rchroma/chroma.hpp"
#include "rchroma/cli.hpp"
#include "rchroma/diffusion.hpp"
#include "rchroma/errors.hpp"
#include "rchroma/pyramid.hpp"
#include "rchroma/spectra.hpp"

namespace py = pybind11;
using namespace rchroma;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// (side, side) or (side, side, channels) arrays, copied.
Grid to_grid(const Array& a) {
  if (a.ndim() != 2 && a.ndim() != 3) throw SizeError("expected a 2-D or 3-D array");
  if (a.shape(0) != a.shape(1)) throw SizeError("grids must be square");
  const int side = static_cast<int>(a.shape(0));
  const int channels = a.ndim() == 3 ? static_cast<int>(a.shape(2)) : 1;
  std::vector<double> data(a.data(), a.data() + a.size());
  return Grid(side, channels, std::move(data));
}

Array to_array(const Grid& g) {
  std::vector<py::ssize_t> shape{g.side(), g.side()};
  if (g.channels() > 1) shape.push_back(g.channels());
  Array out(shape);
  std::copy(g.data().begin(), g.data().end(), out.mutable_data());
  return out;
}

// levels x times array.
Array profile_array(const ChromatographyProfile& p) {
  Array out({static_cast<py::ssize_t>(p.levels()), static_cast<py::ssize_t>(p.times().size())});
  auto v = out.mutable_unchecked<2>();
  for (int m = 0; m < p.levels(); ++m) {
    for (std::size_t i = 0; i < p.times().size(); ++i) v(m, static_cast<py::ssize_t>(i)) = p.value(m, i);
  }
  return out;
}

py::dict radial_dict(const RadialPSD& r) {
  py::dict d;
  d["frequency"] = r.frequency;
  d["power"] = r.power;
  d["counts"] = r.counts;
  d["centroid"] = r.centroid();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resolution chromatography of diffusion noise schedules.";

  py::class_<NoiseSchedule>(m, "NoiseSchedule")
      .def_static("linear", &NoiseSchedule::linear, py::arg("beta_start") = 1e-4, py::arg("beta_end") = 2e-2,
                  py::arg("steps") = 1000)
      .def_static("cosine", &NoiseSchedule::cosine, py::arg("offset") = 0.008)
      .def_static("natural", &NoiseSchedule::natural, py::arg("t_max") = 14.0)
      .def_static(
          "tabulated",
          [](const std::vector<std::pair<double, double>>& knots) {
            std::vector<NoiseSchedule::Knot> k;
            for (const auto& [t, a] : knots) k.push_back({t, a});
            return NoiseSchedule::tabulated(std::move(k));
          },
          py::arg("knots"))
      .def_static("from_csv", &NoiseSchedule::from_csv, py::arg("path"))
      .def_property_readonly("name", &NoiseSchedule::name)
      .def_property_readonly("t_min", &NoiseSchedule::t_min)
      .def_property_readonly("t_max", &NoiseSchedule::t_max)
      .def("alpha", &NoiseSchedule::alpha, py::arg("t"))
      .def("one_minus_alpha", &NoiseSchedule::one_minus_alpha, py::arg("t"))
      .def("log_snr", &NoiseSchedule::log_snr, py::arg("t"))
      .def("snr", &NoiseSchedule::snr, py::arg("t"))
      .def("time_for_log_snr", &NoiseSchedule::time_for_log_snr, py::arg("log_snr"))
      .def("__repr__", [](const NoiseSchedule& s) { return "<NoiseSchedule " + s.name() + ">"; });

  m.def("snr", py::overload_cast<double>(&snr), py::arg("alpha"));
  m.def("snr_inverse", &snr_inverse, py::arg("value"));
  m.def("natural_remap", &natural_remap, py::arg("schedule"), py::arg("t"));
  m.def("remap_between", &remap_between, py::arg("source"), py::arg("target"), py::arg("t"));
  m.def("uniform_times", &uniform_times, py::arg("schedule"), py::arg("count"));

  m.def("max_levels", &max_levels, py::arg("side"));
  m.def("time_adjust", &time_adjust, py::arg("schedule"), py::arg("t"), py::arg("m"));
  m.def("intensity_scale", &intensity_scale, py::arg("alpha"), py::arg("m"));
  m.def("alpha_adjusted", &alpha_adjusted, py::arg("alpha"), py::arg("m"));
  m.def("natural_chromatography", &natural_chromatography, py::arg("t_star"), py::arg("levels"));
  m.def(
      "chromatography",
      [](const NoiseSchedule& s, const std::vector<double>& times, int levels) {
        return profile_array(chromatography(s, times, levels));
      },
      py::arg("schedule"), py::arg("times"), py::arg("levels"), "Profile as a (levels, len(times)) array.");
  m.def(
      "chromatography_numeric",
      [](const NoiseSchedule& s, const std::vector<double>& times, int levels, std::optional<double> h) {
        return profile_array(chromatography_numeric(s, times, levels, h ? *h : default_fd_step(s)));
      },
      py::arg("schedule"), py::arg("times"), py::arg("levels"), py::arg("h") = py::none());

  m.def(
      "downsample", [](const Array& g, int levels) { return to_array(downsample(to_grid(g), levels)); },
      py::arg("grid"), py::arg("levels") = 1);
  m.def(
      "upsample", [](const Array& g, int levels) { return to_array(upsample(to_grid(g), levels)); },
      py::arg("grid"), py::arg("levels") = 1);
  m.def(
      "project", [](const Array& g, int levels) { return to_array(project(to_grid(g), levels)); },
      py::arg("grid"), py::arg("levels"));
  m.def(
      "band_decompose",
      [](const Array& g, int levels) {
        const BandStack b = band_decompose(to_grid(g), levels);
        py::list bands;
        for (const auto& band : b.bands) bands.append(to_array(band));
        return py::make_tuple(bands, to_array(b.residual_mean));
      },
      py::arg("grid"), py::arg("levels"), "Returns (bands, residual_mean).");
  m.def(
      "residual_target", [](const Array& g) { return to_array(residual_target(to_grid(g))); }, py::arg("eps"));

  m.def(
      "psd2d", [](const Array& g) { return to_array(psd2d(to_grid(g))); }, py::arg("grid"));
  m.def(
      "radial_average", [](const Array& p) { return radial_dict(radial_average(to_grid(p))); }, py::arg("powers"));

  py::class_<GaussianImageModel>(m, "GaussianImageModel")
      .def_static(
          "spectral",
          [](const Array& s) {
            const Grid g = to_grid(s);
            return GaussianImageModel::spectral(g.side(), g.data());
          },
          py::arg("spectrum"))
      .def_static("power_law", &GaussianImageModel::power_law, py::arg("side"), py::arg("f0") = 1.0,
                  py::arg("pixel_variance") = 1.0)
      .def_static("band_separable", &GaussianImageModel::band_separable, py::arg("side"),
                  py::arg("band_variances"))
      .def_static("band_power_law", &GaussianImageModel::band_power_law, py::arg("side"),
                  py::arg("pixel_variance"), py::arg("ratio") = 4.0)
      .def(
          "with_mean", [](const GaussianImageModel& m, const Array& mu) { return m.with_mean(to_grid(mu)); },
          py::arg("mean"))
      .def_property_readonly("side", &GaussianImageModel::side)
      .def_property_readonly("band_variances", &GaussianImageModel::band_variances)
      .def("pixel_variance", &GaussianImageModel::pixel_variance)
      .def("expected_psd", [](const GaussianImageModel& m) { return to_array(m.expected_psd()); })
      .def(
          "color", [](const GaussianImageModel& m, const Array& w) { return to_array(m.color(to_grid(w))); },
          py::arg("white"))
      .def(
          "posterior_mean",
          [](const GaussianImageModel& m, const Array& x, double a) { return to_array(m.posterior_mean(to_grid(x), a)); },
          py::arg("x"), py::arg("alpha"))
      .def(
          "noise_prediction",
          [](const GaussianImageModel& m, const Array& x, double a) {
            return to_array(m.noise_prediction(to_grid(x), a));
          },
          py::arg("x"), py::arg("alpha"))
      .def("downsampled", &GaussianImageModel::downsampled, py::arg("m"));

  m.def(
      "level_posterior",
      [](const Array& x, const Array& eps, double a, int level) {
        return to_array(level_posterior(to_grid(x), to_grid(eps), a, level));
      },
      py::arg("x"), py::arg("eps"), py::arg("alpha"), py::arg("m"));
  m.def(
      "multiresolution_threshold",
      [](const Array& x, const Array& eps, double a, int top) {
        return to_array(multiresolution_threshold(to_grid(x), to_grid(eps), a, top));
      },
      py::arg("x"), py::arg("eps"), py::arg("alpha"), py::arg("top_level"));

  m.def(
      "ddim_sample",
      [](const GaussianImageModel& model, const NoiseSchedule& s, const Array& x_T, int steps, bool threshold) {
        SampleOptions opts;
        opts.static_threshold = threshold;
        Grid x = to_grid(x_T);
        {
          py::gil_scoped_release release;
          x = ddim_sample(wiener_denoiser(model, s), s, std::move(x), steps, opts);
        }
        return to_array(x);
      },
      py::arg("model"), py::arg("schedule"), py::arg("x_T"), py::arg("steps"), py::arg("threshold") = false,
      "DDIM with the model's exact Wiener denoiser.");
  m.def(
      "cascaded_sample",
      [](const GaussianImageModel& model, const NoiseSchedule& s, int levels, const Array& x_T, int steps,
         bool threshold, bool time_adjust, bool intensity_rescale) {
        const ResolutionDenoiserBank bank = wiener_bank(model, s, levels);
        Grid x = to_grid(x_T);
        {
          py::gil_scoped_release release;
          x = cascaded_sample(bank, std::move(x), steps, threshold, {time_adjust, intensity_rescale});
        }
        return to_array(x);
      },
      py::arg("model"), py::arg("schedule"), py::arg("levels"), py::arg("x_T"), py::arg("steps"),
      py::arg("threshold") = false, py::arg("time_adjust") = true, py::arg("intensity_rescale") = true,
      "DDIM with a bank of per-resolution Wiener denoisers of a band-separable model.");

  m.def(
      "cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "rchroma");
        return cli::run(args);
      },
      py::arg("args"), "Runs the command-line tool in-process and returns its exit code.");
}
