// cmax: contrast-maximization motion estimation and tracking on DVS event files.
//
//   cmax track    --input events.txt --roi 88,58,64,64 --output-dir out
//   cmax estimate --input events.txt --batch-index 0 --output-dir out
//   cmax cycles   --n-events 5000 --iters 100 --roi-events 800 --roi 64x64
//   cmax synth    --scene square --vx 3 --vy -2 --seed 7 --output-dir out

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmax/config.hpp"
#include "cmax/csv.hpp"
#include "cmax/cyclemodel.hpp"
#include "cmax/events.hpp"
#include "cmax/optimizer.hpp"
#include "cmax/synth.hpp"
#include "cmax/tracker.hpp"

namespace fs = std::filesystem;
using namespace cmax;

namespace {

std::pair<int, int> parse_dims(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw ConfigError("expected WxH, got '" + s + "'");
  try {
    std::size_t used = 0;
    const int w = std::stoi(s.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(s);
    const std::string rest = s.substr(x + 1);
    const int h = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(s);
    return {w, h};
  } catch (const std::logic_error&) {
    throw ConfigError("expected WxH, got '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t b = 0;
  while (true) {
    const auto e = s.find(sep, b);
    out.push_back(s.substr(b, e - b));
    if (e == std::string::npos) break;
    b = e + 1;
  }
  return out;
}

/// Options shared by `track` and `estimate`. Values are kept as strings and
/// applied over the config file so that flags win.
struct RunFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::string sensor, roi;
  bool dump_iwe = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value config file");
    cmd->add_option("--input", values["input_path"], "event file (t x y p per line)");
    cmd->add_option("--sensor", sensor, "sensor size WxH (default 240x180)");
    cmd->add_option("--roi", roi, "initial ROI x0,y0,w,h");
    cmd->add_option("--batch-size", values["batch_size"], "events per batch");
    cmd->add_option("--iterations", values["iterations"], "gradient ascent iterations");
    cmd->add_option("--learning-rate", values["learning_rate"], "step size, or 'auto'");
    cmd->add_option("--roi-update-scale", values["roi_update_scale"], "ROI shift per unit velocity");
    cmd->add_option("--min-roi-events", values["min_roi_events"], "skip batches with fewer ROI events");
    cmd->add_option("--mode", values["accumulator_mode"], "naive | banked");
    cmd->add_option("--output-dir", values["output_dir"], "where outputs are written");
    cmd->add_flag("--dump-iwe", dump_iwe, "write iwe_<batch>.pgm per batch");
  }

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    for (const auto& [key, value] : values)
      if (!value.empty()) set_config_value(cfg, key, value);
    if (!sensor.empty()) {
      const auto [w, h] = parse_dims(sensor);
      cfg.sensor = {w, h};
    }
    if (!roi.empty()) {
      const auto parts = split(roi, ',');
      if (parts.size() != 4) throw ConfigError("--roi expects x0,y0,w,h");
      set_config_value(cfg, "roi_x0", parts[0]);
      set_config_value(cfg, "roi_y0", parts[1]);
      set_config_value(cfg, "roi_w", parts[2]);
      set_config_value(cfg, "roi_h", parts[3]);
    }
    if (dump_iwe) cfg.dump_iwe = true;
    if (cfg.input_path.empty()) throw ConfigError("no input file given (--input)");
    if (cfg.roi.w < 2 || cfg.roi.h < 2) throw ConfigError("ROI must be at least 2x2");
    return cfg;
  }
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

int cmd_track(const RunFlags& flags) {
  const RunConfig cfg = flags.resolve();
  const auto events = load_events(cfg.input_path, cfg.sensor);
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  {
    auto out = open_output(dir / "run.cfg");
    write_config(out, cfg);
  }

  BatchObserver observer;
  if (cfg.dump_iwe) {
    observer = [&](const BatchRecord& rec, const ImageSetd& images) {
      char name[32];
      std::snprintf(name, sizeof(name), "iwe_%04zu.pgm", rec.batch_index);
      write_pgm((dir / name).string(), images.iwe);
    };
  }
  const TrackResult result = track(events, tracker_config(cfg), observer);
  {
    auto out = open_output(dir / "trajectory.csv");
    write_track_csv(out, result);
  }

  double contrast_sum = 0.0, roi_events = 0.0;
  for (const auto& b : result.batches) {
    contrast_sum += b.contrast;
    roi_events += static_cast<double>(b.events_in_roi);
  }
  const double n = std::max<double>(1.0, static_cast<double>(result.batches.size()));
  std::cout << "batches: " << result.batches.size() << '\n'
            << "mean contrast: " << format_number(contrast_sum / n) << '\n'
            << "mean events in ROI: " << format_number(roi_events / n) << '\n'
            << "final ROI origin: " << format_number(result.final_roi.x0) << ", "
            << format_number(result.final_roi.y0) << '\n'
            << "wrote " << (dir / "trajectory.csv").string() << '\n';
  return 0;
}

int cmd_estimate(const RunFlags& flags, std::size_t batch_index) {
  const RunConfig cfg = flags.resolve();
  const auto events = load_events(cfg.input_path, cfg.sensor);
  const std::size_t begin = batch_index * cfg.batch_size;
  if (begin >= events.size())
    throw ConfigError("batch " + std::to_string(batch_index) + " is past the end of '" +
                      cfg.input_path + "' (" + std::to_string(events.size()) + " events)");
  const std::size_t end = std::min(events.size(), begin + cfg.batch_size);
  const EventBatch local =
      filter_roi(make_batch({events.begin() + begin, events.begin() + end}), cfg.roi);
  if (local.empty()) throw std::runtime_error("no events inside the ROI in this batch");

  OptimizerConfig opt = tracker_config(cfg).optimizer;
  const MotionEstimate est = estimate_motion(local, opt);

  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  {
    auto out = open_output(dir / "trace.csv");
    write_trace_csv(out, est.trace);
  }
  if (cfg.dump_iwe) {
    char name[32];
    std::snprintf(name, sizeof(name), "iwe_%04zu.pgm", batch_index);
    write_pgm((dir / name).string(), images_at(local, est.v, opt.shape, opt.event_offset).iwe);
  }
  std::cout << "events in ROI: " << local.size() << '\n'
            << "learning rate: " << format_number(est.trace.learning_rate) << '\n'
            << "velocity: " << format_number(est.v.x()) << ", " << format_number(est.v.y()) << '\n'
            << "contrast: " << format_number(est.trace.final_contrast) << '\n'
            << "wrote " << (dir / "trace.csv").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contrast-maximization motion estimation for event cameras"};
  app.require_subcommand(1);

  RunFlags track_flags;
  auto* track_cmd = app.add_subcommand("track", "track an ROI through an event stream");
  track_flags.attach(track_cmd);

  RunFlags est_flags;
  std::size_t batch_index = 0;
  auto* est_cmd = app.add_subcommand("estimate", "estimate motion for one batch and write its trace");
  est_flags.attach(est_cmd);
  est_cmd->add_option("--batch-index", batch_index, "which batch of the stream to use");

  CycleParams cp;
  std::string cyc_roi = "64x64", cyc_format = "text";
  std::vector<std::string> measured;
  bool no_reference = false;
  auto* cyc_cmd = app.add_subcommand("cycles", "cycle-count and timing model of the FPGA pipeline");
  cyc_cmd->add_option("--n-events", cp.n_events, "events in the batch (N)");
  cyc_cmd->add_option("--iters", cp.iterations, "optimization iterations (T)");
  cyc_cmd->add_option("--roi-events", cp.roi_events, "events inside the ROI (n)");
  cyc_cmd->add_option("--roi", cyc_roi, "ROI size WxH (P = W*H)");
  cyc_cmd->add_option("--clock", cp.clock_hz, "clock frequency in Hz");
  cyc_cmd->add_option("--readout-latency", cp.readout_latency, "L_r in cycles");
  cyc_cmd->add_option("--voting-latency", cp.voting_latency, "L_v in cycles");
  cyc_cmd->add_option("--measured", measured, "extra timing label=milliseconds (repeatable)");
  cyc_cmd->add_flag("--no-reference", no_reference, "omit the reference CPU/GPU timings");
  cyc_cmd->add_option("--format", cyc_format, "text | csv")->check(CLI::IsMember({"text", "csv"}));

  SceneSpec scene;
  std::string scene_name = "square", synth_sensor = "240x180", synth_center, synth_dir = ".";
  auto* syn_cmd = app.add_subcommand("synth", "generate a synthetic translating-object event file");
  syn_cmd->add_option("--scene", scene_name, "square | bar | points");
  syn_cmd->add_option("--vx", scene.velocity.x(), "true vx, px per normalized time unit");
  syn_cmd->add_option("--vy", scene.velocity.y(), "true vy, px per normalized time unit");
  syn_cmd->add_option("--batches", scene.batches, "number of batches to generate");
  syn_cmd->add_option("--batch-size", scene.batch_size, "events per batch");
  syn_cmd->add_option("--period-us", scene.event_period_us, "time between events");
  syn_cmd->add_option("--sensor", synth_sensor, "sensor size WxH");
  syn_cmd->add_option("--center", synth_center, "object centre x,y at the first batch midpoint");
  syn_cmd->add_option("--size", scene.size, "object size in pixels");
  syn_cmd->add_option("--noise", scene.noise_fraction, "fraction of uniform background events");
  syn_cmd->add_option("--seed", scene.seed, "random seed");
  syn_cmd->add_option("--output-dir", synth_dir, "where events.txt and truth.txt go");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*track_cmd) return cmd_track(track_flags);
    if (*est_cmd) return cmd_estimate(est_flags, batch_index);

    if (*cyc_cmd) {
      const auto [w, h] = parse_dims(cyc_roi);
      cp.roi_pixels = static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(h);
      auto timings = no_reference ? decltype(reference_timings()){} : reference_timings();
      for (const auto& m : measured) {
        const auto eq = m.find('=');
        if (eq == std::string::npos) throw ConfigError("--measured expects label=milliseconds");
        timings.emplace_back(m.substr(0, eq), std::stod(m.substr(eq + 1)) * 1e-3);
      }
      write_cycle_report(std::cout, cp, speedup_report(cp, timings),
                         cyc_format == "csv" ? ReportFormat::csv : ReportFormat::text);
      return 0;
    }

    if (*syn_cmd) {
      scene.shape = parse_scene_shape(scene_name);
      const auto [w, h] = parse_dims(synth_sensor);
      scene.sensor = {w, h};
      scene.center = {w / 2.0, h / 2.0};
      if (!synth_center.empty()) {
        const auto parts = split(synth_center, ',');
        if (parts.size() != 2) throw ConfigError("--center expects x,y");
        scene.center = {std::stod(parts[0]), std::stod(parts[1])};
      }
      const SyntheticScene s = generate_scene(scene);
      const fs::path dir(synth_dir);
      fs::create_directories(dir);
      auto ev = open_output(dir / "events.txt");
      write_events(ev, s.events);
      auto tr = open_output(dir / "truth.txt");
      write_truth(tr, scene, s.truth);
      const auto noise = std::count(s.truth.noise.begin(), s.truth.noise.end(), true);
      std::cout << "wrote " << s.events.size() << " events (" << noise << " noise) to "
                << (dir / "events.txt").string() << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
