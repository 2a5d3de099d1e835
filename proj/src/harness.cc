#include "skg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "skg/errors.hpp"
#include "skg/io.hpp"
#include "skg/rng.hpp"

namespace skg {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string Unquote(std::string s) {
  s = Trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string> SplitList(std::string s) {
  s = Trim(s);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw ValidationError("unterminated list: " + s);
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Unquote(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long ParseInt(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "' expects an integer, got '" + v + "'");
  }
}

std::uint64_t ParseU64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos, 0);
    if (pos != v.size() || v.front() == '-') throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "' expects an unsigned integer, got '" + v + "'");
  }
}

double ParseDouble(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "' expects a number, got '" + v + "'");
  }
}

// "12", "6..14" or "10..20:2".
void AppendTValues(const std::string& item, std::vector<int>& out) {
  const auto dots = item.find("..");
  if (dots == std::string::npos) {
    out.push_back(static_cast<int>(ParseInt("t_values", item)));
    return;
  }
  const std::string lo = Trim(item.substr(0, dots));
  std::string rest = item.substr(dots + 2);
  long long step = 1;
  if (const auto colon = rest.find(':'); colon != std::string::npos) {
    step = ParseInt("t_values", Trim(rest.substr(colon + 1)));
    rest = rest.substr(0, colon);
  }
  const long long a = ParseInt("t_values", lo);
  const long long b = ParseInt("t_values", Trim(rest));
  if (step < 1) throw ValidationError("t_values range step must be positive");
  for (long long t = a; t <= b; t += step) out.push_back(static_cast<int>(t));
}

std::string FormatDouble(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string Sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == ';') ch = ' ';
  }
  return s;
}

std::vector<std::uint64_t> SampleVertices(std::uint64_t n, std::uint64_t seed, int count) {
  CounterStream stream(seed, 1);
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(stream.NextU64() % n);
  return out;
}

VerdictRow RunRow(const ExperimentConfig& cfg, const GeneratorMatrix& p, const RegimeReport& report,
                  const SupportReport& support, int t, int rep) {
  VerdictRow row;
  row.t = t;
  row.replicate = rep;
  row.seed = RowSeed(cfg.master_seed, t, rep);
  row.cases = report.case_ids;
  try {
    row.n = VertexCount(p.k(), t);
    if (row.n > cfg.max_n) {
      throw GuardError("n = " + std::to_string(row.n) + " exceeds max_n = " + std::to_string(cfg.max_n));
    }
    const auto produce = [&](const EdgeSink& sink) {
      ForEachSampledEdge(p, t, row.seed, sink, cfg.max_groups);
    };
    ComponentTracker tracker(row.n);
    produce([&](std::uint64_t u, std::uint64_t v) { tracker.AddEdge(u, v); });
    row.stats = tracker.Finish();
    row.verdicts = ComputeVerdicts(report, support, row.stats, p.k(), t, cfg.thresholds);

    const bool need_graph = cfg.metrics.contains(Metric::kDiameter) ||
                            cfg.metrics.contains(Metric::kDegreeCheck) ||
                            cfg.metrics.contains(Metric::kNeighborCheck);
    if (!need_graph) return row;
    const CsrGraph g = CsrGraph::FromStream(row.n, produce);
    if (cfg.metrics.contains(Metric::kDiameter)) {
      if (row.n <= kExactDiameterMaxN) {
        row.extras.emplace_back("diameter", std::to_string(DiameterExact(g)));
      } else {
        const DiameterEstimate est = DiameterLowerBound(g, row.seed, cfg.diameter_starts);
        row.extras.emplace_back("diameter_lb", std::to_string(est.lower_bound));
      }
    }
    const auto probe = SampleVertices(row.n, row.seed, cfg.vertex_sample);
    if (cfg.metrics.contains(Metric::kDegreeCheck)) {
      double sum = 0.0;
      int used = 0;
      for (const DegreeRow& d : DegreeVsExpected(g, p, t, probe)) {
        if (d.expected > 0.0) {
          sum += d.ratio;
          ++used;
        }
      }
      row.extras.emplace_back("degree_ratio_mean", used ? FormatDouble(sum / used) : "nan");
    }
    if (cfg.metrics.contains(Metric::kNeighborCheck)) {
      std::uint64_t within = 0, total = 0;
      for (std::uint64_t v : probe) {
        if (g.degree(v) == 0) continue;
        const NeighborSignatureStats s = NeighborSignatures(g, p, t, v);
        within += s.within_radius;
        total += s.degree;
      }
      row.extras.emplace_back("neighbor_within_frac",
                              total ? FormatDouble(static_cast<double>(within) / total) : "nan");
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

const char* ToString(Metric m) {
  switch (m) {
    case Metric::kComponents: return "components";
    case Metric::kIsolated: return "isolated";
    case Metric::kDiameter: return "diameter";
    case Metric::kDegreeCheck: return "degree_check";
    case Metric::kNeighborCheck: return "neighbor_check";
  }
  return "?";
}

Metric ParseMetric(const std::string& name) {
  for (Metric m : {Metric::kComponents, Metric::kIsolated, Metric::kDiameter, Metric::kDegreeCheck,
                   Metric::kNeighborCheck}) {
    if (name == ToString(m)) return m;
  }
  throw ValidationError("unknown metric '" + name + "'");
}

ExperimentConfig ParseExperimentConfig(const std::string& text, const std::string& base_dir) {
  ExperimentConfig cfg;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ValidationError("config key '" + key + "' given twice");
    if (key == "matrix") {
      std::filesystem::path path = Unquote(value);
      if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
      cfg.matrix_path = path.string();
    } else if (key == "t_values") {
      for (const std::string& item : SplitList(value)) AppendTValues(item, cfg.t_values);
    } else if (key == "replicates") {
      cfg.replicates = static_cast<int>(ParseInt(key, value));
    } else if (key == "master_seed") {
      cfg.master_seed = ParseU64(key, value);
    } else if (key == "metrics") {
      cfg.metrics.clear();
      for (const std::string& item : SplitList(value)) cfg.metrics.insert(ParseMetric(item));
    } else if (key == "output") {
      cfg.output_path = Unquote(value);
    } else if (key == "max_n") {
      cfg.max_n = ParseU64(key, value);
    } else if (key == "max_groups") {
      cfg.max_groups = ParseU64(key, value);
    } else if (key == "giant_floor") {
      cfg.thresholds.giant_floor = ParseDouble(key, value);
    } else if (key == "shattered_slack") {
      cfg.thresholds.shattered_slack = ParseDouble(key, value);
    } else if (key == "workers") {
      cfg.workers = static_cast<int>(ParseInt(key, value));
    } else if (key == "diameter_starts") {
      cfg.diameter_starts = static_cast<int>(ParseInt(key, value));
    } else if (key == "vertex_sample") {
      cfg.vertex_sample = static_cast<int>(ParseInt(key, value));
    } else {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }
  ValidateConfig(cfg);
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseExperimentConfig(buf.str(), std::filesystem::path(path).parent_path().string());
}

void ValidateConfig(const ExperimentConfig& cfg) {
  if (cfg.t_values.empty()) throw ValidationError("t_values must be nonempty");
  for (int t : cfg.t_values) {
    if (t < 0) throw ValidationError("t_values must be nonnegative");
  }
  if (cfg.replicates < 1) throw ValidationError("replicates must be at least 1");
  if (!cfg.matrix && cfg.matrix_path.empty()) throw ValidationError("config needs a matrix path");
  if (cfg.workers < 1) throw ValidationError("workers must be at least 1");
  if (cfg.diameter_starts < 1) throw ValidationError("diameter_starts must be at least 1");
  if (cfg.vertex_sample < 1) throw ValidationError("vertex_sample must be at least 1");
  if (!(cfg.thresholds.giant_floor >= 0.0) || !(cfg.thresholds.shattered_slack >= 0.0)) {
    throw ValidationError("giant_floor and shattered_slack must be nonnegative");
  }
  if (cfg.max_n > kStatsMaxN) throw ValidationError("max_n cannot exceed 2^28");
}

std::vector<Verdict> ComputeVerdicts(const RegimeReport& report, const SupportReport& support,
                                     const ComponentStats& stats, int k, int t,
                                     const VerdictThresholds& th) {
  std::vector<Verdict> out;
  const auto has = [&](int c) { return report.case_ids.contains(c); };
  if (has(1)) {
    const SmallComponentBound b = LemmaSmallComponentBound(support, k, t);
    out.push_back({1, "small_components_observed", BigInt(stats.largest) <= b.bound + 1});
  }
  if (has(2) && report.params.subcritical_delta) {
    const double n = static_cast<double>(stats.n);
    const double floor = n - th.shattered_slack * std::pow(n, *report.params.subcritical_delta);
    out.push_back({2, "shattered_observed", static_cast<double>(stats.isolated) >= floor});
  }
  for (int c : {3, 4}) {
    if (has(c)) out.push_back({c, "giant_observed", stats.largest_fraction >= th.giant_floor});
  }
  if (has(5)) out.push_back({5, "many_isolated_observed", stats.isolated >= 1});
  if (has(6)) out.push_back({6, "some_isolated_observed", stats.isolated >= 1});
  for (int c : {7, 8}) {
    if (has(c)) out.push_back({c, "connected_observed", stats.component_count == 1});
  }
  return out;
}

std::vector<Verdict> ComputeVerdicts(const RegimeReport& report, const GeneratorMatrix& p,
                                     const ComponentStats& stats, int t,
                                     const VerdictThresholds& th) {
  return ComputeVerdicts(report, CheckSupport(p), stats, p.k(), t, th);
}

std::uint64_t RowSeed(std::uint64_t master_seed, int t, int replicate) {
  return HashCombine(HashCombine(master_seed, static_cast<std::uint64_t>(t)),
                     static_cast<std::uint64_t>(replicate));
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  ValidateConfig(cfg);
  const GeneratorMatrix p = cfg.matrix ? *cfg.matrix : ReadMatrixFile(cfg.matrix_path);
  ExperimentResult result;
  result.report = Classify(p);
  const SupportReport support = CheckSupport(p);

  std::vector<std::pair<int, int>> jobs;
  for (int t : cfg.t_values) {
    for (int r = 0; r < cfg.replicates; ++r) jobs.emplace_back(t, r);
  }
  result.rows.resize(jobs.size());
  std::atomic<std::size_t> cursor{0};
  const auto work = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < jobs.size();) {
      result.rows[i] = RunRow(cfg, p, result.report, support, jobs[i].first, jobs[i].second);
    }
  };
  const int workers = std::min<std::size_t>(cfg.workers, jobs.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return result;
}

void WriteCsv(std::ostream& os, const std::vector<VerdictRow>& rows) {
  os << kCsvHeader << '\n';
  for (const VerdictRow& r : rows) {
    std::string cases;
    for (int c : r.cases) cases += (cases.empty() ? "" : ";") + std::to_string(c);
    std::string flags;
    const auto add = [&](const std::string& kv) { flags += (flags.empty() ? "" : ";") + kv; };
    for (const Verdict& v : r.verdicts) add(v.name + "=" + (v.observed ? "1" : "0"));
    for (const auto& [k, v] : r.extras) add(k + "=" + v);
    if (r.error) add("error=" + Sanitize(*r.error));
    const ComponentStats& s = r.stats;
    os << r.t << ',' << r.n << ',' << r.seed << ',' << s.m << ',' << s.isolated << ',' << s.largest
       << ',' << s.second_largest << ',' << FormatDouble(s.largest_fraction) << ','
       << s.component_count << ',' << cases << ',' << flags << '\n';
  }
}

void WriteExperimentOutputs(const ExperimentResult& result, const GeneratorMatrix& p,
                            const std::string& csv_path) {
  {
    std::ofstream out(csv_path);
    if (!out) throw ValidationError("cannot open " + csv_path + " for writing");
    WriteCsv(out, result.rows);
  }
  nlohmann::json sidecar = {{"matrix", MatrixToJson(p)}, {"report", ReportToJson(result.report)}};
  std::ofstream out(csv_path + ".report.json");
  if (!out) throw ValidationError("cannot open " + csv_path + ".report.json for writing");
  out << sidecar.dump(2) << '\n';
}

}  // namespace skg
