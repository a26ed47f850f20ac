#include "pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

#include "csv_io.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "svg.hpp"

namespace eb {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kGibbsStreamTag = 0x474942;  // "GIB"

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Sample variance (n-1 denominator).
double variance_of(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void stage_simulate(const Config& cfg) {
  SimulatedUnits sim = generate(cfg.to_scenario());
  write_units_csv(join(cfg.output_dir, "units.csv"), sim.units);
}

void stage_fit(const Config& cfg) {
  auto units = read_units_csv(join(cfg.output_dir, "units.csv"));
  UnitSink sink;
  if (cfg.dump_draws) {
    fs::create_directories(fs::path(cfg.output_dir) / "draws");
    sink = [&cfg](const UnitData& u, const GibbsResult& r) {
      write_draws_csv(join(cfg.output_dir, "draws/unit_" + std::to_string(u.unit_id) + ".csv"),
                      r.beta_draws);
    };
  }
  BatchResult batch =
      batch_fit(units, cfg.gibbs_iterations, cfg.gibbs_burn_in,
                derive_stream(cfg.seed, kGibbsStreamTag), resolve_threads(cfg.threads), sink);
  if (!batch.failures.empty()) {
    std::string msg = "gibbs failed for " + std::to_string(batch.failures.size()) + " unit(s):";
    for (std::size_t i = 0; i < batch.failures.size() && i < 5; ++i)
      msg += " [unit " + std::to_string(batch.failures[i].unit_id) + "] " +
             batch.failures[i].message;
    throw_numeric(msg);
  }
  write_summaries_csv(join(cfg.output_dir, "summaries.csv"), batch.summaries);
}

void stage_score(const Config& cfg) {
  auto summaries = read_summaries_csv(join(cfg.output_dir, "summaries.csv"));
  std::vector<ScoreRecord> records;
  records.reserve(summaries.size() * 2);
  for (const auto& s : summaries) {
    ScoreRecord r;
    r.unit_id = s.unit_id;
    r.score = posterior_score(s.beta_median, s.beta_robust_sd);
    r.source = ScoreSource::robust_ratio;
    r.clamped = false;
    records.push_back(r);
  }
  for (const auto& s : summaries) {
    ProbToZ pz = prob_to_z(s.p_positive, s.n_draws);
    ScoreRecord r;
    r.unit_id = s.unit_id;
    r.score = pz.z;
    r.source = ScoreSource::prob_transform;
    r.clamped = pz.clamped;
    records.push_back(r);
  }
  write_scores_csv(join(cfg.output_dir, "scores.csv"), records);
}

std::vector<ScoreRecord> robust_records(const Config& cfg) {
  auto all = read_scores_csv(join(cfg.output_dir, "scores.csv"));
  std::vector<ScoreRecord> out;
  for (const auto& r : all)
    if (r.source == ScoreSource::robust_ratio) out.push_back(r);
  if (out.empty()) throw_numeric("scores.csv has no robust_ratio records");
  return out;
}

void stage_density(const Config& cfg) {
  auto records = robust_records(cfg);
  std::vector<double> scores;
  scores.reserve(records.size());
  for (const auto& r : records) scores.push_back(r.score);
  Histogram hist = bin_scores(scores, cfg.histogram_width);
  for (int degree : cfg.lindsey_degrees) {
    LindseyFit fit = fit_lindsey(hist, degree);
    std::string suffix = "_d" + std::to_string(degree) + ".csv";
    write_histogram_csv(join(cfg.output_dir, "histogram" + suffix), hist, fit);
    write_fit_csv(join(cfg.output_dir, "fit" + suffix), fit);
  }
}

void stage_correct(const Config& cfg) {
  auto records = robust_records(cfg);
  std::vector<double> scores;
  std::vector<std::int64_t> ids;
  for (const auto& r : records) {
    scores.push_back(r.score);
    ids.push_back(r.unit_id);
  }
  for (int degree : cfg.lindsey_degrees) {
    std::string suffix = "_d" + std::to_string(degree) + ".csv";
    LindseyFit fit = read_fit_csv(join(cfg.output_dir, "fit" + suffix));
    auto results = correct_batch(scores, cfg.sigma, fit, resolve_threads(cfg.threads));
    write_corrections_csv(join(cfg.output_dir, "corrections" + suffix), ids, results);
  }
}

PipelineReport stage_report(const Config& cfg) {
  PipelineReport rep;
  auto all_scores = read_scores_csv(join(cfg.output_dir, "scores.csv"));
  std::vector<double> robust, prob;
  std::size_t prob_clamped = 0;
  for (const auto& r : all_scores) {
    if (r.source == ScoreSource::robust_ratio) robust.push_back(r.score);
    if (r.source == ScoreSource::prob_transform) {
      prob.push_back(r.score);
      if (r.clamped) ++prob_clamped;
    }
  }
  rep.n_units = robust.size();
  rep.robust_mean = mean_of(robust);
  rep.robust_sd = std::sqrt(variance_of(robust));
  rep.prob_mean = mean_of(prob);
  rep.prob_sd = std::sqrt(variance_of(prob));
  rep.prob_clamp_fraction =
      prob.empty() ? 0.0 : static_cast<double>(prob_clamped) / static_cast<double>(prob.size());

  std::string fig_dir = join(cfg.output_dir, "figures");
  fs::create_directories(fig_dir);

  for (int degree : cfg.lindsey_degrees) {
    std::string suffix = "_d" + std::to_string(degree);
    Histogram hist = read_histogram_csv(join(cfg.output_dir, "histogram" + suffix + ".csv"));
    LindseyFit fit = read_fit_csv(join(cfg.output_dir, "fit" + suffix + ".csv"));
    auto corrections = read_corrections_csv(join(cfg.output_dir, "corrections" + suffix + ".csv"));

    DegreeReport dr;
    dr.degree = degree;
    dr.converged = fit.converged;
    dr.deviance = fit.deviance;
    dr.bins = hist.size();

    std::vector<double> raw, corrected, null_c, nonnull_c;
    std::size_t clamped = 0;
    for (const auto& row : corrections) {
      raw.push_back(row.result.raw_score);
      corrected.push_back(row.result.corrected_mean);
      if (row.result.variance_clamped) ++clamped;
      if (row.unit_id <= cfg.null_units)
        null_c.push_back(row.result.corrected_mean);
      else
        nonnull_c.push_back(row.result.corrected_mean);
    }
    dr.variance_clamp_fraction =
        corrections.empty() ? 0.0
                            : static_cast<double>(clamped) / static_cast<double>(corrections.size());
    dr.raw_variance = variance_of(raw);
    dr.corrected_variance = variance_of(corrected);
    dr.null_corrected_mean = mean_of(null_c);
    dr.nonnull_corrected_mean = mean_of(nonnull_c);
    dr.separation = (null_c.empty() || nonnull_c.empty())
                        ? std::numeric_limits<double>::quiet_NaN()
                        : dr.nonnull_corrected_mean - dr.null_corrected_mean;
    rep.degrees.push_back(dr);

    // Figure: score histogram with fitted density overlay.
    double total_w = static_cast<double>(hist.total) * hist.bin_width;
    std::vector<SvgFigure::Bar> bars;
    double y_max = 0.0;
    for (std::size_t k = 0; k < hist.size(); ++k) {
      double dens = static_cast<double>(hist.counts[k]) / total_w;
      bars.push_back({hist.left_edge(k), hist.left_edge(k + 1), dens});
      y_max = std::max(y_max, dens);
    }
    double x_lo = hist.origin, x_hi = hist.left_edge(hist.size());
    std::vector<std::pair<double, double>> curve;
    for (int i = 0; i <= 200; ++i) {
      double z = x_lo + (x_hi - x_lo) * i / 200.0;
      double dens = fit.fitted_mean(z) / total_w;
      y_max = std::max(y_max, dens);
      curve.emplace_back(z, dens);
    }
    SvgFigure fig1("Posterior score density (degree " + std::to_string(degree) + ")", "score",
                   "density");
    fig1.set_ranges(x_lo, x_hi, 0.0, y_max * 1.05);
    fig1.add_bars(bars, "#bbbbbb");
    fig1.add_polyline(curve, "#000000");
    fig1.write(join(fig_dir, "score_density" + suffix + ".svg"));

    // Figure + data: correction term over a z grid.
    std::vector<std::pair<double, double>> term;
    double t_lo = 0.0, t_hi = 0.0;
    {
      std::ostringstream csv;
      csv << "z,correction_term\n";
      for (int i = 0; i <= 200; ++i) {
        double z = x_lo + (x_hi - x_lo) * i / 200.0;
        double t = cfg.sigma * cfg.sigma * log_density_deriv(fit, z);
        term.emplace_back(z, t);
        t_lo = std::min(t_lo, t);
        t_hi = std::max(t_hi, t);
        csv << format_double17(z) << ',' << format_double17(t) << '\n';
      }
      write_text_file(join(fig_dir, "correction_curve" + suffix + ".csv"), csv.str());
    }
    SvgFigure fig2("Correction term (degree " + std::to_string(degree) + ")", "score",
                   "correction");
    fig2.set_ranges(x_lo, x_hi, t_lo * 1.05 - 0.05, t_hi * 1.05 + 0.05);
    fig2.add_hline(0.0, "#888888");
    fig2.add_polyline(term, "#000000");
    fig2.write(join(fig_dir, "correction" + suffix + ".svg"));

    // Figure: score histograms before (light gray) and after (black) correction.
    Histogram before = bin_scores(raw, hist.bin_width);
    Histogram after = bin_scores(corrected, hist.bin_width);
    double lo = std::min(before.origin, after.origin);
    double hi = std::max(before.left_edge(before.size()), after.left_edge(after.size()));
    std::vector<SvgFigure::Bar> bars_before, bars_after;
    double c_max = 0.0;
    for (std::size_t k = 0; k < before.size(); ++k) {
      bars_before.push_back(
          {before.left_edge(k), before.left_edge(k + 1), static_cast<double>(before.counts[k])});
      c_max = std::max(c_max, static_cast<double>(before.counts[k]));
    }
    for (std::size_t k = 0; k < after.size(); ++k) {
      bars_after.push_back(
          {after.left_edge(k), after.left_edge(k + 1), static_cast<double>(after.counts[k])});
      c_max = std::max(c_max, static_cast<double>(after.counts[k]));
    }
    SvgFigure fig3("Scores before and after correction (degree " + std::to_string(degree) + ")",
                   "score", "count");
    fig3.set_ranges(lo, hi, 0.0, c_max * 1.05);
    fig3.add_bars(bars_before, "#cccccc");
    fig3.add_bars(bars_after, "#000000", 0.65);
    fig3.write(join(fig_dir, "before_after" + suffix + ".svg"));
  }

  // report.txt
  std::ostringstream os;
  Scenario sc = cfg.to_scenario();
  os << "pipeline report\n";
  os << "scenario " << sc.id << ": null=" << sc.null_count << " nonnull=" << sc.nonnull_count
     << " n_per_unit=" << sc.n_per_unit << " treated=" << sc.treated_per_unit
     << " noise_sd=" << fmt6(sc.noise_sd) << " law=" << sc.effect_law.describe() << "\n";
  os << "seed " << cfg.seed << ", gibbs " << cfg.gibbs_iterations << "/" << cfg.gibbs_burn_in
     << ", histogram_width " << fmt6(cfg.histogram_width) << ", sigma " << fmt6(cfg.sigma)
     << "\n\n";
  os << "scores (robust_ratio):   n=" << rep.n_units << " mean=" << fmt6(rep.robust_mean)
     << " sd=" << fmt6(rep.robust_sd) << "\n";
  os << "scores (prob_transform): n=" << rep.n_units << " mean=" << fmt6(rep.prob_mean)
     << " sd=" << fmt6(rep.prob_sd) << " clamped_fraction=" << fmt6(rep.prob_clamp_fraction)
     << "\n\n";
  for (const auto& dr : rep.degrees) {
    os << "degree " << dr.degree << ": bins=" << dr.bins << " converged=" << (dr.converged ? 1 : 0)
       << " deviance=" << fmt6(dr.deviance) << "\n";
    os << "  corrections: variance_clamped_fraction=" << fmt6(dr.variance_clamp_fraction)
       << " raw_variance=" << fmt6(dr.raw_variance)
       << " corrected_variance=" << fmt6(dr.corrected_variance) << "\n";
    os << "  group means (corrected): null=" << fmt6(dr.null_corrected_mean)
       << " nonnull=" << fmt6(dr.nonnull_corrected_mean) << " separation=" << fmt6(dr.separation)
       << "\n";
  }
  write_text_file(join(cfg.output_dir, "report.txt"), os.str());
  return rep;
}

}  // namespace

const char* to_string(Stage s) {
  switch (s) {
    case Stage::simulate: return "simulate";
    case Stage::fit: return "fit";
    case Stage::score: return "score";
    case Stage::density: return "density";
    case Stage::correct: return "correct";
    case Stage::report: return "report";
  }
  return "unknown";
}

Stage stage_from_string(const std::string& name) {
  if (name == "simulate") return Stage::simulate;
  if (name == "fit") return Stage::fit;
  if (name == "score") return Stage::score;
  if (name == "density") return Stage::density;
  if (name == "correct") return Stage::correct;
  if (name == "report") return Stage::report;
  throw Error(errc::config, "unknown stage: " + name);
}

PipelineReport run_stage(const Config& cfg, Stage stage) {
  cfg.validate();
  try {
    switch (stage) {
      case Stage::simulate: stage_simulate(cfg); break;
      case Stage::fit: stage_fit(cfg); break;
      case Stage::score: stage_score(cfg); break;
      case Stage::density: stage_density(cfg); break;
      case Stage::correct: stage_correct(cfg); break;
      case Stage::report: return stage_report(cfg);
    }
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(to_string(stage), e.code(), e.what());
  } catch (const std::exception& e) {
    throw StageError(to_string(stage), errc::numeric, e.what());
  }
  return {};
}

PipelineReport run_pipeline(const Config& cfg) {
  run_stage(cfg, Stage::simulate);
  run_stage(cfg, Stage::fit);
  run_stage(cfg, Stage::score);
  run_stage(cfg, Stage::density);
  run_stage(cfg, Stage::correct);
  return run_stage(cfg, Stage::report);
}

}  // namespace eb
