#include "csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace eb {

namespace {

namespace fs = std::filesystem;

// Writes to <path>.tmp, renames into place on commit, unlinks on abandon.
class AtomicFile {
 public:
  explicit AtomicFile(const std::string& path) : path_(path), tmp_(path + ".tmp") {
    fs::path dir = fs::path(path).parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw Error(errc::io, "cannot open for writing: " + tmp_);
  }
  ~AtomicFile() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      fs::remove(tmp_, ec);
    }
  }
  std::ostream& stream() { return out_; }
  void commit() {
    out_.flush();
    if (!out_) throw Error(errc::io, "write failed: " + tmp_);
    out_.close();
    std::error_code ec;
    fs::rename(tmp_, path_, ec);
    if (ec) throw Error(errc::io, "cannot rename " + tmp_ + " -> " + path_);
    committed_ = true;
  }

 private:
  std::string path_, tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

class CsvReader {
 public:
  CsvReader(const std::string& path, const std::string& expected_header) : path_(path) {
    in_.open(path, std::ios::binary);
    if (!in_) throw Error(errc::missing_input, "missing input artifact: " + path);
    std::string header;
    if (!std::getline(in_, header)) throw Error(errc::io, "empty file: " + path);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != expected_header)
      throw Error(errc::io, "unexpected header in " + path + ": got '" + header + "'");
  }
  // Header validated against a prefix only (variable-width files).
  CsvReader(const std::string& path, const std::string& header_prefix, bool) : path_(path) {
    in_.open(path, std::ios::binary);
    if (!in_) throw Error(errc::missing_input, "missing input artifact: " + path);
    if (!std::getline(in_, header_)) throw Error(errc::io, "empty file: " + path);
    if (!header_.empty() && header_.back() == '\r') header_.pop_back();
    if (header_.rfind(header_prefix, 0) != 0)
      throw Error(errc::io, "unexpected header in " + path + ": got '" + header_ + "'");
  }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      ++lineno_;
      if (line.empty()) continue;
      fields = split(line);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(errc::io, path_ + ":" + std::to_string(lineno_ + 1) + ": " + what);
  }

  const std::string& header() const { return header_; }

 private:
  std::string path_;
  std::string header_;
  std::ifstream in_;
  std::size_t lineno_ = 0;
};

double to_double(const CsvReader& r, const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) r.fail("bad number '" + s + "'");
  return v;
}

std::int64_t to_i64(const CsvReader& r, const std::string& s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) r.fail("bad integer '" + s + "'");
  return v;
}

std::uint64_t to_u64(const CsvReader& r, const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) r.fail("bad integer '" + s + "'");
  return v;
}

void expect_fields(const CsvReader& r, const std::vector<std::string>& f, std::size_t n) {
  if (f.size() != n)
    r.fail("expected " + std::to_string(n) + " fields, got " + std::to_string(f.size()));
}

}  // namespace

std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_units_csv(const std::string& path, const std::vector<UnitData>& units) {
  AtomicFile f(path);
  f.stream() << "unit_id,obs_index,y,d\n";
  for (const auto& u : units) {
    for (std::size_t i = 0; i < u.y.size(); ++i) {
      f.stream() << u.unit_id << ',' << (i + 1) << ',' << format_double17(u.y[i]) << ','
                 << static_cast<int>(u.d[i]) << '\n';
    }
  }
  f.commit();
}

std::vector<UnitData> read_units_csv(const std::string& path) {
  CsvReader r(path, "unit_id,obs_index,y,d");
  std::vector<UnitData> units;
  std::vector<std::string> f;
  while (r.next(f)) {
    expect_fields(r, f, 4);
    std::int64_t id = to_i64(r, f[0]);
    if (units.empty() || units.back().unit_id != id) {
      if (!units.empty() && id < units.back().unit_id) r.fail("unit_id out of order");
      units.push_back(UnitData{id, {}, {}});
    }
    UnitData& u = units.back();
    std::int64_t obs = to_i64(r, f[1]);
    if (obs != static_cast<std::int64_t>(u.y.size()) + 1) r.fail("obs_index out of order");
    u.y.push_back(to_double(r, f[2]));
    std::int64_t d = to_i64(r, f[3]);
    if (d != 0 && d != 1) r.fail("d must be 0 or 1");
    u.d.push_back(static_cast<std::uint8_t>(d));
  }
  return units;
}

namespace {
const char* kSummariesHeader =
    "unit_id,beta_median,beta_robust_sd,p_positive,n_draws,q05,q16,q50,q84,q95,seed";
}

void write_summaries_csv(const std::string& path, const std::vector<PosteriorSummary>& summaries) {
  AtomicFile f(path);
  f.stream() << kSummariesHeader << '\n';
  for (const auto& s : summaries) {
    f.stream() << s.unit_id << ',' << format_double17(s.beta_median) << ','
               << format_double17(s.beta_robust_sd) << ',' << format_double17(s.p_positive) << ','
               << s.n_draws << ',' << format_double17(s.q05) << ',' << format_double17(s.q16)
               << ',' << format_double17(s.q50) << ',' << format_double17(s.q84) << ','
               << format_double17(s.q95) << ',' << s.seed << '\n';
  }
  f.commit();
}

std::vector<PosteriorSummary> read_summaries_csv(const std::string& path) {
  CsvReader r(path, kSummariesHeader);
  std::vector<PosteriorSummary> out;
  std::vector<std::string> f;
  while (r.next(f)) {
    expect_fields(r, f, 11);
    PosteriorSummary s;
    s.unit_id = to_i64(r, f[0]);
    s.beta_median = to_double(r, f[1]);
    s.beta_robust_sd = to_double(r, f[2]);
    s.p_positive = to_double(r, f[3]);
    s.n_draws = to_u64(r, f[4]);
    s.q05 = to_double(r, f[5]);
    s.q16 = to_double(r, f[6]);
    s.q50 = to_double(r, f[7]);
    s.q84 = to_double(r, f[8]);
    s.q95 = to_double(r, f[9]);
    s.seed = to_u64(r, f[10]);
    out.push_back(s);
  }
  return out;
}

void write_scores_csv(const std::string& path, const std::vector<ScoreRecord>& scores) {
  AtomicFile f(path);
  f.stream() << "unit_id,score,source,clamped\n";
  for (const auto& s : scores) {
    f.stream() << s.unit_id << ',' << format_double17(s.score) << ',' << to_string(s.source)
               << ',' << (s.clamped ? 1 : 0) << '\n';
  }
  f.commit();
}

std::vector<ScoreRecord> read_scores_csv(const std::string& path) {
  CsvReader r(path, "unit_id,score,source,clamped");
  std::vector<ScoreRecord> out;
  std::vector<std::string> f;
  while (r.next(f)) {
    expect_fields(r, f, 4);
    ScoreRecord s;
    s.unit_id = to_i64(r, f[0]);
    s.score = to_double(r, f[1]);
    s.source = score_source_from_string(f[2]);
    s.clamped = to_i64(r, f[3]) != 0;
    out.push_back(s);
  }
  return out;
}

void write_histogram_csv(const std::string& path, const Histogram& hist, const LindseyFit& fit) {
  AtomicFile f(path);
  f.stream() << "left_edge,midpoint,count,fitted_mean\n";
  for (std::size_t k = 0; k < hist.size(); ++k) {
    f.stream() << format_double17(hist.left_edge(k)) << ',' << format_double17(hist.midpoint(k))
               << ',' << hist.counts[k] << ',' << format_double17(fit.fitted_mean(hist.midpoint(k)))
               << '\n';
  }
  f.commit();
}

Histogram read_histogram_csv(const std::string& path) {
  CsvReader r(path, "left_edge,midpoint,count,fitted_mean");
  Histogram h;
  std::vector<std::string> f;
  std::vector<double> lefts;
  while (r.next(f)) {
    expect_fields(r, f, 4);
    lefts.push_back(to_double(r, f[0]));
    double mid = to_double(r, f[1]);
    h.counts.push_back(to_u64(r, f[2]));
    h.total += h.counts.back();
    (void)mid;
  }
  if (lefts.empty()) throw Error(errc::io, "histogram file has no bins: " + path);
  h.origin = lefts.front();
  h.bin_width = lefts.size() > 1 ? lefts[1] - lefts[0] : 1.0;
  return h;
}

void write_fit_csv(const std::string& path, const LindseyFit& fit) {
  AtomicFile f(path);
  f.stream() << "degree,center,scale";
  for (int j = 0; j <= fit.degree; ++j) f.stream() << ",eta" << j;
  f.stream() << ",converged,deviance\n";
  f.stream() << fit.degree << ',' << format_double17(fit.center) << ','
             << format_double17(fit.scale);
  for (double c : fit.coefficients) f.stream() << ',' << format_double17(c);
  f.stream() << ',' << (fit.converged ? 1 : 0) << ',' << format_double17(fit.deviance) << '\n';
  f.commit();
}

LindseyFit read_fit_csv(const std::string& path) {
  CsvReader r(path, "degree,center,scale,eta0", true);
  std::vector<std::string> f;
  if (!r.next(f)) throw Error(errc::io, "fit file has no data row: " + path);
  if (f.size() < 6) throw Error(errc::io, "fit file row too short: " + path);
  LindseyFit fit;
  fit.degree = static_cast<int>(to_i64(r, f[0]));
  fit.center = to_double(r, f[1]);
  fit.scale = to_double(r, f[2]);
  std::size_t n_coef = static_cast<std::size_t>(fit.degree) + 1;
  if (f.size() != 3 + n_coef + 2) throw Error(errc::io, "fit file column count mismatch: " + path);
  for (std::size_t j = 0; j < n_coef; ++j) fit.coefficients.push_back(to_double(r, f[3 + j]));
  fit.converged = to_i64(r, f[3 + n_coef]) != 0;
  fit.deviance = to_double(r, f[4 + n_coef]);
  return fit;
}

void write_corrections_csv(const std::string& path, const std::vector<std::int64_t>& unit_ids,
                           const std::vector<CorrectionResult>& results) {
  if (unit_ids.size() != results.size())
    throw Error(errc::io, "write_corrections_csv: id/result size mismatch");
  AtomicFile f(path);
  f.stream() << "unit_id,raw_score,correction_term,corrected_mean,corrected_sd,variance_clamped\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& c = results[i];
    f.stream() << unit_ids[i] << ',' << format_double17(c.raw_score) << ','
               << format_double17(c.correction_term) << ',' << format_double17(c.corrected_mean)
               << ',' << format_double17(c.corrected_sd) << ',' << (c.variance_clamped ? 1 : 0)
               << '\n';
  }
  f.commit();
}

std::vector<CorrectionRow> read_corrections_csv(const std::string& path) {
  CsvReader r(path, "unit_id,raw_score,correction_term,corrected_mean,corrected_sd,variance_clamped");
  std::vector<CorrectionRow> out;
  std::vector<std::string> f;
  while (r.next(f)) {
    expect_fields(r, f, 6);
    CorrectionRow row;
    row.unit_id = to_i64(r, f[0]);
    row.result.raw_score = to_double(r, f[1]);
    row.result.correction_term = to_double(r, f[2]);
    row.result.corrected_mean = to_double(r, f[3]);
    row.result.corrected_sd = to_double(r, f[4]);
    row.result.variance_clamped = to_i64(r, f[5]) != 0;
    out.push_back(row);
  }
  return out;
}

void write_draws_csv(const std::string& path, std::span<const double> draws) {
  AtomicFile f(path);
  f.stream() << "beta\n";
  for (double v : draws) f.stream() << format_double17(v) << '\n';
  f.commit();
}

void write_text_file(const std::string& path, const std::string& content) {
  AtomicFile f(path);
  f.stream() << content;
  f.commit();
}

}  // namespace eb
