#include "rchroma/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <unistd.h>

#include "rchroma/chroma.hpp"
#include "rchroma/diffusion.hpp"
#include "rchroma/errors.hpp"
#include "rchroma/parallel.hpp"
#include "rchroma/rng.hpp"

namespace rchroma::cli {
namespace {

namespace fs = std::filesystem;

struct Defaults {
  int side;
  int levels;  // 0: log2(side) + 1
  int steps;
  int samples;
};

Defaults defaults_for(const std::string& command) {
  if (command == "chroma") return {64, 0, 50, 1};
  if (command == "measure") return {32, 0, 50, 1};
  if (command == "simulate") return {64, 0, 50, 500};
  if (command == "upscale") return {32, 2, 1000, 200};
  if (command == "compose") return {32, 0, 50, 1};
  throw ArgumentError("unknown command `" + command + "`");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ArgumentError(message);
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

// Sorted by peak time, ties broken by level index.
std::vector<int> peak_order(const ChromatographyProfile& p, int levels) {
  std::vector<int> order(static_cast<std::size_t>(levels));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> peak(static_cast<std::size_t>(levels));
  for (int m = 0; m < levels; ++m) peak[static_cast<std::size_t>(m)] = p.times()[p.peak_index(m)];
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return peak[static_cast<std::size_t>(a)] < peak[static_cast<std::size_t>(b)]; });
  return order;
}

double correlation(const Grid& a, const Grid& b) {
  const double na = squared_norm(a);
  const double nb = squared_norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / std::sqrt(na * nb);
}

std::string eta_label(double eta) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << eta;
  return os.str();
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"schedule", c.schedule},
          {"schedule_file", c.schedule_file},
          {"side", c.side},
          {"levels", c.levels},
          {"steps", c.steps},
          {"samples", c.samples},
          {"seed", c.seed},
          {"out", c.out.string()},
          {"points", c.points},
          {"verify", c.verify},
          {"time_adjust", c.time_adjust},
          {"intensity_rescale", c.intensity_rescale},
          {"threshold", c.threshold},
          {"include_residual", c.include_residual},
          {"identical_conditions", c.identical_conditions},
          {"dump_grids", c.dump_grids},
          {"amplitude", c.amplitude},
          {"guidance", c.guidance},
          {"pixel_variance", c.pixel_variance},
          {"etas", c.etas}};
}

// ---- commands. Each writes into `dir`, which is a fresh staging directory.

void cmd_chroma(const RunConfig& cfg, const fs::path& dir) {
  const NoiseSchedule s = make_schedule(cfg);
  const auto times = uniform_times(s, cfg.points);
  const ChromatographyProfile profile = chromatography(s, times, cfg.levels);
  profile.write_csv(dir / "chromatography.csv");
  std::cout << "chromatography: " << s.name() << ", " << cfg.levels << " levels, " << times.size()
            << " times\n";
  if (!cfg.verify) return;

  const double h = default_fd_step(s);
  std::vector<double> inner;
  for (double t : times) {
    if (t - h >= s.t_min() && t + h <= s.t_max()) inner.push_back(t);
  }
  const ChromatographyProfile fd = chromatography_numeric(s, inner, cfg.levels, h);
  const ChromatographyProfile ref = chromatography(s, inner, cfg.levels);
  double worst = 0.0;
  for (int m = 0; m < cfg.levels; ++m) {
    for (std::size_t i = 0; i < inner.size(); ++i) worst = std::max(worst, std::abs(fd.value(m, i) - ref.value(m, i)));
  }
  fd.write_csv(dir / "chromatography_fd.csv");
  auto out = open_csv(dir / "verify.csv");
  out << "fd_step,max_abs_deviation\n" << h << ',' << worst << '\n';
  std::cout << "verify: max |closed form - finite difference| = " << worst << " (h = " << h << ")\n";
}

void cmd_measure(const RunConfig& cfg, const fs::path& dir) {
  const MeasureResult r = measure_guidance(cfg);
  r.measured.profile.write_csv(dir / "measured_chromatography.csv");
  r.theory.write_csv(dir / "theory_chromatography.csv");
  write_band_energies_csv(dir / "band_energies.csv", r.measured);

  auto report = open_csv(dir / "report.csv");
  report << "t,total_energy,degenerate\n";
  const auto& times = r.measured.profile.times();
  for (std::size_t i = 0; i < times.size(); ++i) {
    double total = std::accumulate(r.measured.energies[i].begin(), r.measured.energies[i].end(), 0.0);
    if (cfg.include_residual) total += r.measured.residual_energy[i];
    report << times[i] << ',' << total << ',' << (r.measured.degenerate[i] ? "warning: zero guidance energy" : "ok")
           << '\n';
  }

  auto peaks = open_csv(dir / "peaks.csv");
  peaks << "level,theory_peak_t,measured_peak_t\n";
  for (int m = 0; m < cfg.levels; ++m) {
    peaks << m << ',' << times[r.theory.peak_index(m)] << ',' << times[r.measured.profile.peak_index(m)] << '\n';
  }
  if (r.any_degenerate) {
    std::cerr << "warning: guidance energy is zero at some times; normalization is degenerate there\n";
  }
  std::cout << "measure: peak ordering " << (r.orders_match ? "matches" : "differs from") << " theory\n";
}

void cmd_simulate(const RunConfig& cfg, const fs::path& dir) {
  const NoiseSchedule s = make_schedule(cfg);
  const auto model = GaussianImageModel::power_law(cfg.side);
  const auto frames = change_psd_trajectory(model, s, cfg.steps, cfg.samples, cfg.seed);
  write_psd_trajectory_csv(dir / "psd_trajectory.csv", frames);
  const auto summary = summarize_coarse_to_fine(frames, cfg.side);
  {
    auto out = open_csv(dir / "centroids.csv");
    out << "t,centroid\n";
    for (std::size_t i = 0; i < frames.size(); ++i) out << frames[i].t << ',' << summary.centroids[i] << '\n';
  }
  {
    auto out = open_csv(dir / "summary.csv");
    out << "monotone_fraction,low_first,low_last,high_first,high_last\n"
        << summary.monotone_fraction << ',' << summary.low_first << ',' << summary.low_last << ','
        << summary.high_first << ',' << summary.high_last << '\n';
  }
  std::cout << "simulate: centroid non-decreasing over " << summary.monotone_fraction * 100.0
            << "% of consecutive pairs\n";
  if (!cfg.dump_grids) return;

  fs::create_directories(dir / "trajectory");
  auto index = open_csv(dir / "trajectory" / "index.csv");
  index << "step,t,alpha,file\n";
  SampleOptions opts;
  opts.observer = [&](int k, double t, const Grid& x, const Grid&) {
    const std::string name = "x_" + std::to_string(k) + ".rcg";
    write_grid(dir / "trajectory" / name, x);
    index << k << ',' << t << ',' << s.alpha(t) << ',' << name << '\n';
  };
  RngStream rng(cfg.seed, 0);
  const Grid x0 = ddim_sample(wiener_denoiser(model, s), s, rng.normal_grid(cfg.side), cfg.steps, opts);
  write_grid(dir / "trajectory" / "x_0.rcg", x0);
  index << 0 << ',' << s.t_min() << ',' << s.alpha(s.t_min()) << ",x_0.rcg\n";
}

void cmd_upscale(const RunConfig& cfg, const fs::path& dir) {
  const UpscaleResult r = run_upscale(cfg, {"full", "no-time-adjust", "no-intensity-rescale", "no-threshold"});
  auto report = open_csv(dir / "psd_report.csv");
  report << "variant,r,model,reference,sample,deviation,raw_deviation\n";
  auto summary = open_csv(dir / "summary.csv");
  summary << "variant,time_adjust,intensity_rescale,threshold,max_deviation,max_raw_deviation\n";
  for (const auto& v : r.variants) {
    for (std::size_t i = 0; i < v.sample_psd.power.size(); ++i) {
      report << v.name << ',' << v.sample_psd.frequency[i] << ',' << r.model_psd.power[i] << ','
             << v.reference_psd.power[i] << ',' << v.sample_psd.power[i] << ',' << v.deviation[i] << ','
             << v.raw_deviation[i] << '\n';
    }
    summary << v.name << ',' << v.options.time_adjust << ',' << v.options.intensity_rescale << ',' << v.threshold
            << ',' << v.max_deviation << ',' << v.max_raw_deviation << '\n';
    write_grid(dir / ("sample_" + v.name + ".rcg"), v.first_sample);
    std::cout << "upscale " << v.name << ": max per-bin PSD deviation " << v.max_deviation << '\n';
  }
  if (r.trivial) {
    auto out = open_csv(dir / "trivial_reduction.csv");
    out << "levels,max_abs_diff_vs_ddim\n1," << r.trivial_max_diff << '\n';
    std::cout << "upscale: one level, cascade reduces to plain DDIM (max |diff| = " << r.trivial_max_diff << ")\n";
  }
}

void cmd_compose(const RunConfig& cfg, const fs::path& dir) {
  const ComposeResult r = run_compose(cfg);
  write_grid(dir / "reference_condition1.rcg", r.reference_eta1);
  write_grid(dir / "reference_condition2.rcg", r.reference_eta0);
  auto out = open_csv(dir / "compose_report.csv");
  out << "eta,band,diff_energy_eta0,diff_energy_eta1,corr_eta0,corr_eta1\n";
  for (const auto& run : r.runs) {
    write_grid(dir / ("sample_eta_" + eta_label(run.eta) + ".rcg"), run.sample);
    for (int m = 0; m < r.levels; ++m) {
      const auto i = static_cast<std::size_t>(m);
      out << run.eta << ',' << m << ',' << run.diff_energy_eta0[i] << ',' << run.diff_energy_eta1[i] << ','
          << run.corr_eta0[i] << ',' << run.corr_eta1[i] << '\n';
    }
  }
  std::cout << "compose: " << r.runs.size() << " samples\n";
}

// Runs the command inside a staging directory and moves its files into
// cfg.out only on success, so a failed run leaves nothing behind.
void execute(const RunConfig& cfg) {
  const fs::path out = fs::absolute(cfg.out);
  const fs::path staging = out.parent_path() / (".staging-" + out.filename().string() + "-" + std::to_string(::getpid()));
  fs::remove_all(staging);
  fs::create_directories(staging);
  try {
    {
      std::ofstream config(staging / "config.json");
      config << to_json(cfg).dump(2) << '\n';
    }
    if (cfg.command == "chroma") cmd_chroma(cfg, staging);
    else if (cfg.command == "measure") cmd_measure(cfg, staging);
    else if (cfg.command == "simulate") cmd_simulate(cfg, staging);
    else if (cfg.command == "upscale") cmd_upscale(cfg, staging);
    else if (cfg.command == "compose") cmd_compose(cfg, staging);
    fs::create_directories(out);
    for (const auto& entry : fs::directory_iterator(staging)) {
      const fs::path target = out / entry.path().filename();
      fs::remove_all(target);
      fs::rename(entry.path(), target);
    }
    fs::remove_all(staging);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    throw;
  }
}

}  // namespace

void resolve(RunConfig& cfg) {
  const Defaults d = defaults_for(cfg.command);
  if (cfg.side == 0) cfg.side = d.side;
  require(is_power_of_two(cfg.side) && cfg.side >= 2 && cfg.side <= 1024,
          "--side must be a power of two in [2, 1024]");
  const int max = max_levels(cfg.side);
  if (cfg.levels == 0) cfg.levels = d.levels ? d.levels : max;
  require(cfg.levels >= 1 && cfg.levels <= max,
          "--levels must lie in [1, " + std::to_string(max) + "] for side " + std::to_string(cfg.side));
  if (cfg.steps == 0) cfg.steps = d.steps;
  require(cfg.steps >= 2 && cfg.steps <= 100000, "--steps must lie in [2, 100000]");
  if (cfg.samples == 0) cfg.samples = d.samples;
  require(cfg.samples >= 1 && cfg.samples <= 1000000, "--samples must lie in [1, 1000000]");
  require(cfg.points >= 3 && cfg.points <= 1000000, "--points must lie in [3, 1000000]");
  require(std::isfinite(cfg.amplitude) && cfg.amplitude >= 0.0, "--amplitude must be finite and >= 0");
  require(std::isfinite(cfg.guidance), "--guidance must be finite");
  require(cfg.pixel_variance > 0.0 && std::isfinite(cfg.pixel_variance), "--pixel-variance must be positive");
  require(!cfg.etas.empty(), "--eta needs at least one value");
  for (double e : cfg.etas) require(e >= 0.0 && e <= 1.0, "--eta values must lie in [0, 1]");
  std::sort(cfg.etas.begin(), cfg.etas.end());
  cfg.etas.erase(std::unique(cfg.etas.begin(), cfg.etas.end()), cfg.etas.end());
  if (cfg.schedule == "tabulated") {
    require(!cfg.schedule_file.empty(), "--schedule tabulated needs --file");
    require(fs::exists(cfg.schedule_file), "schedule file " + cfg.schedule_file + " does not exist");
  }
  make_schedule(cfg);
}

NoiseSchedule make_schedule(const RunConfig& cfg) {
  if (cfg.schedule == "linear") return NoiseSchedule::linear();
  if (cfg.schedule == "cosine") return NoiseSchedule::cosine();
  if (cfg.schedule == "natural") return NoiseSchedule::natural();
  if (cfg.schedule == "tabulated") return NoiseSchedule::from_csv(cfg.schedule_file);
  throw ArgumentError("unknown schedule `" + cfg.schedule + "` (expected linear, cosine, natural or tabulated)");
}

MeasureResult measure_guidance(const RunConfig& cfg) {
  const NoiseSchedule s = make_schedule(cfg);
  const auto base = GaussianImageModel::power_law(cfg.side);
  const auto cond_model =
      cfg.identical_conditions ? base : base.with_mean(condition_mean(base, cfg.amplitude, cfg.seed + 1));
  const Denoiser uncond = wiener_denoiser(base, s, "uncond");
  const Denoiser cond = wiener_denoiser(cond_model, s, "cond");
  const Denoiser guided = guided_denoiser(uncond, {cond}, ConditionWeights::constant({cfg.guidance}));

  std::vector<std::pair<double, Grid>> fields;
  SampleOptions opts;
  opts.observer = [&](int, double t, const Grid& x, const Grid&) {
    fields.emplace_back(t, guidance_field(uncond, cond, x, t));
  };
  RngStream rng(cfg.seed, 0);
  ddim_sample(guided, s, rng.normal_grid(cfg.side), cfg.steps, opts);

  MeasureResult r;
  r.measured = measured_chromatography(fields, cfg.levels, cfg.include_residual);
  r.theory = chromatography(s, r.measured.profile.times(), cfg.levels);
  r.any_degenerate = std::any_of(r.measured.degenerate.begin(), r.measured.degenerate.end(), [](bool b) { return b; });
  r.measured_order = peak_order(r.measured.profile, cfg.levels);
  r.theory_order = peak_order(r.theory, cfg.levels);
  r.orders_match = !r.any_degenerate && r.measured_order == r.theory_order;
  return r;
}

UpscaleResult run_upscale(const RunConfig& cfg, const std::vector<std::string>& variants) {
  const NoiseSchedule s = make_schedule(cfg);
  const auto model = GaussianImageModel::band_power_law(cfg.side, cfg.pixel_variance);
  const ResolutionDenoiserBank bank = wiener_bank(model, s, cfg.levels);
  UpscaleResult r;
  r.model_psd = radial_average(model.expected_psd());
  const auto n = static_cast<std::size_t>(cfg.samples);

  // Exact draws from the same initial noise, shared by every variant.
  std::vector<Grid> ref_psd(n);
  parallel_for(n, [&](std::size_t i) {
    RngStream rng(cfg.seed, i);
    ref_psd[i] = psd2d(model.color(rng.normal_grid(cfg.side)));
  });
  Grid ref_total(cfg.side);
  for (const auto& p : ref_psd) ref_total += p;
  ref_total *= 1.0 / static_cast<double>(n);
  RadialPSD reference = radial_average(ref_total);
  reference.n_samples = cfg.samples;

  for (const auto& name : variants) {
    UpscaleVariant v;
    v.name = name;
    v.threshold = cfg.threshold;
    v.options.time_adjust = cfg.time_adjust;
    v.options.intensity_rescale = cfg.intensity_rescale;
    if (name == "no-time-adjust") v.options.time_adjust = false;
    else if (name == "no-intensity-rescale") v.options.intensity_rescale = false;
    else if (name == "no-threshold") v.threshold = false;
    else if (name != "full") throw ArgumentError("unknown upscale variant `" + name + "`");

    std::vector<Grid> psd(n);
    parallel_for(n, [&](std::size_t i) {
      RngStream rng(cfg.seed, i);
      Grid sample = cascaded_sample(bank, rng.normal_grid(cfg.side), cfg.steps, v.threshold, v.options);
      psd[i] = psd2d(sample);
      if (i == 0) v.first_sample = std::move(sample);
    });
    Grid total(cfg.side);
    for (const auto& p : psd) total += p;
    total *= 1.0 / static_cast<double>(n);
    v.sample_psd = radial_average(total);
    v.sample_psd.n_samples = cfg.samples;
    v.reference_psd = reference;
    for (std::size_t b = 0; b < v.sample_psd.power.size(); ++b) {
      const double dev = v.sample_psd.power[b] / reference.power[b] - 1.0;
      const double raw = v.sample_psd.power[b] / r.model_psd.power[b] - 1.0;
      v.deviation.push_back(dev);
      v.raw_deviation.push_back(raw);
      v.max_deviation = std::max(v.max_deviation, std::abs(dev));
      v.max_raw_deviation = std::max(v.max_raw_deviation, std::abs(raw));
    }
    r.variants.push_back(std::move(v));
  }

  if (cfg.levels == 1 && !r.variants.empty()) {
    r.trivial = true;
    SampleOptions opts;
    opts.static_threshold = r.variants.front().threshold;
    RngStream rng(cfg.seed, 0);
    const Grid plain = ddim_sample(wiener_denoiser(model, s), s, rng.normal_grid(cfg.side), cfg.steps, opts);
    r.trivial_max_diff = max_abs_diff(plain, r.variants.front().first_sample);
  }
  return r;
}

ComposeResult run_compose(const RunConfig& cfg) {
  const NoiseSchedule s = make_schedule(cfg);
  const auto base = GaussianImageModel::power_law(cfg.side);
  const Denoiser uncond = wiener_denoiser(base, s, "uncond");
  const Denoiser c1 = wiener_denoiser(base.with_mean(condition_mean(base, cfg.amplitude, cfg.seed + 1)), s, "cond1");
  const Denoiser c2 = wiener_denoiser(base.with_mean(condition_mean(base, cfg.amplitude, cfg.seed + 2)), s, "cond2");
  const Grid x_T = RngStream(cfg.seed, 0).normal_grid(cfg.side);
  SampleOptions opts;
  opts.static_threshold = cfg.threshold;

  ComposeResult r;
  r.levels = max_levels(cfg.side);
  r.reference_eta1 = ddim_sample(c1, s, x_T, cfg.steps, opts);
  r.reference_eta0 = ddim_sample(c2, s, x_T, cfg.steps, opts);
  const BandStack ref0 = band_decompose(r.reference_eta0, r.levels);
  const BandStack ref1 = band_decompose(r.reference_eta1, r.levels);
  for (double eta : cfg.etas) {
    ComposeRun run;
    run.eta = eta;
    const Denoiser d = guided_denoiser(uncond, {c1, c2}, ConditionWeights::heaviside_switch(eta, s));
    run.sample = ddim_sample(d, s, x_T, cfg.steps, opts);
    const BandStack bands = band_decompose(run.sample, r.levels);
    for (int m = 0; m < r.levels; ++m) {
      const auto i = static_cast<std::size_t>(m);
      run.diff_energy_eta0.push_back(squared_norm(bands.bands[i] - ref0.bands[i]));
      run.diff_energy_eta1.push_back(squared_norm(bands.bands[i] - ref1.bands[i]));
      run.corr_eta0.push_back(correlation(bands.bands[i], ref0.bands[i]));
      run.corr_eta1.push_back(correlation(bands.bands[i], ref1.bands[i]));
    }
    r.runs.push_back(std::move(run));
  }
  return r;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Resolution chromatography of diffusion noise schedules, with analytic Gaussian denoisers."};
  app.require_subcommand(1);
  app.footer(
      "Commands write into --out: config.json plus CSV and RCG1 grid files.\n"
      "Exit codes: 0 success, 1 runtime failure, 2 invalid input.");

  app.add_option("--seed", cfg.seed, "Root random seed (all commands)");
  app.add_option("--out", cfg.out, "Output directory (all commands)");
  app.add_option("--side", cfg.side, "Grid side, a power of two");
  app.add_option("--levels", cfg.levels, "Resolution levels M (default log2(side)+1; upscale 2)");
  app.add_option("--steps", cfg.steps, "DDIM steps (default 50; upscale 1000)");
  app.add_option("--samples", cfg.samples, "Monte Carlo samples (simulate 500, upscale 200)");
  app.add_option("--schedule", cfg.schedule, "Noise schedule: linear, cosine, natural or tabulated")
      ->capture_default_str();
  app.add_option("--file", cfg.schedule_file, "CSV with header t,alpha for --schedule tabulated");
  app.add_option("--points", cfg.points, "chroma: number of uniform time points")->capture_default_str();
  app.add_flag("--verify", cfg.verify, "chroma: also compute finite differences and report the max deviation");
  app.add_flag("!--no-time-adjust", cfg.time_adjust, "upscale: feed t instead of tau_m to coarse levels");
  app.add_flag("!--no-intensity-rescale", cfg.intensity_rescale, "upscale: feed D^m x_t without the lambda scale");
  app.add_flag("!--no-threshold", cfg.threshold, "upscale/compose: disable the static [-1, 1] threshold");
  app.add_flag("--include-residual", cfg.include_residual, "measure: count the remainder term in the normalization");
  app.add_flag("--identical-conditions", cfg.identical_conditions,
               "measure: use the unconditional model as the condition (zero guidance)");
  app.add_flag("--dump-grids", cfg.dump_grids, "simulate: write one trajectory as RCG1 grids plus index.csv");
  app.add_option("--amplitude", cfg.amplitude, "measure/compose: strength of the condition means")
      ->capture_default_str();
  app.add_option("--guidance", cfg.guidance, "measure: guidance weight w")->capture_default_str();
  app.add_option("--pixel-variance", cfg.pixel_variance, "upscale: pixel variance of the band model")
      ->capture_default_str();
  app.add_option("--eta", cfg.etas, "compose: switch points eta in [0, 1]")->capture_default_str();

  auto add_command = [&](const char* name, const char* help) {
    app.add_subcommand(name, help)->fallthrough()->callback([&cfg, name] { cfg.command = name; });
  };
  add_command("chroma", "Theoretical chromatography r_m(t) of a schedule");
  add_command("measure", "Measured band chromatography of a guidance field along a guided trajectory");
  add_command("simulate", "PSD of the change in E[x0|x_t] along DDIM trajectories");
  add_command("upscale", "Cascaded sampling with time/intensity ablations");
  add_command("compose", "Two-condition prompt switching over a sweep of eta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  try {
    resolve(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  try {
    execute(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kOk;
}

}  // namespace rchroma::cli
