#ifndef SKG_HARNESS_HPP_
#define SKG_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skg/classify.hpp"
#include "skg/genmatrix.hpp"
#include "skg/graphstats.hpp"
#include "skg/sampler.hpp"

namespace skg {

enum class Metric { kComponents, kIsolated, kDiameter, kDegreeCheck, kNeighborCheck };

const char* ToString(Metric m);
Metric ParseMetric(const std::string& name);

struct VerdictThresholds {
  double giant_floor = 0.01;
  double shattered_slack = 10.0;  // C in isolated >= n - C n^delta
};

struct ExperimentConfig {
  std::string matrix_path;
  std::optional<GeneratorMatrix> matrix;  // overrides matrix_path when set
  std::vector<int> t_values;
  int replicates = 1;
  std::uint64_t master_seed = 0;
  std::set<Metric> metrics = {Metric::kComponents, Metric::kIsolated};
  std::string output_path;
  std::uint64_t max_n = kStatsMaxN;
  std::uint64_t max_groups = kMaxGroups;
  VerdictThresholds thresholds;
  int workers = 1;           // rows run concurrently; output does not depend on it
  int diameter_starts = 8;   // double sweeps when n is too large for the exact diameter
  int vertex_sample = 16;    // vertices probed by degree_check / neighbor_check
};

// Flat "key = value" lines; '#' starts a comment; lists are comma separated,
// optionally in brackets; strings may be quoted. Relative matrix paths are
// resolved against base_dir.
ExperimentConfig ParseExperimentConfig(const std::string& text, const std::string& base_dir = "");
ExperimentConfig LoadExperimentConfig(const std::string& path);
void ValidateConfig(const ExperimentConfig& cfg);

struct Verdict {
  int item = 0;  // the case this flag checks
  std::string name;
  bool observed = false;
};

// One flag per applicable case; cases the report does not list get none.
std::vector<Verdict> ComputeVerdicts(const RegimeReport& report, const SupportReport& support,
                                     const ComponentStats& stats, int k, int t,
                                     const VerdictThresholds& th = {});
std::vector<Verdict> ComputeVerdicts(const RegimeReport& report, const GeneratorMatrix& p,
                                     const ComponentStats& stats, int t,
                                     const VerdictThresholds& th = {});

struct VerdictRow {
  int t = 0;
  int replicate = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  ComponentStats stats;
  std::set<int> cases;
  std::vector<Verdict> verdicts;
  // Metric outputs that are not verdicts, e.g. diameter_lb=7.
  std::vector<std::pair<std::string, std::string>> extras;
  std::optional<std::string> error;
};

std::uint64_t RowSeed(std::uint64_t master_seed, int t, int replicate);

struct ExperimentResult {
  RegimeReport report;
  std::vector<VerdictRow> rows;  // ordered by (t, replicate)
};

ExperimentResult RunExperiment(const ExperimentConfig& cfg);

inline constexpr const char* kCsvHeader =
    "t,n,seed,m,isolated,largest,second_largest,largest_fraction,component_count,cases,flags";

void WriteCsv(std::ostream& os, const std::vector<VerdictRow>& rows);
// Writes the CSV to `csv_path` and the report to `csv_path + ".report.json"`.
void WriteExperimentOutputs(const ExperimentResult& result, const GeneratorMatrix& p,
                            const std::string& csv_path);

}  // namespace skg

#endif  // SKG_HARNESS_HPP_
