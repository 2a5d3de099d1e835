// skg: classify generator matrices, sample stochastic Kronecker graphs and
// run regime sweeps.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skg/classify.hpp"
#include "skg/errors.hpp"
#include "skg/graphstats.hpp"
#include "skg/harness.hpp"
#include "skg/io.hpp"
#include "skg/rng.hpp"
#include "skg/sampler.hpp"
#include "skg/spectral.hpp"

namespace {

using nlohmann::json;
using namespace skg;

json NumberOrString(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

void PrintReportText(const RegimeReport& r) {
  std::cout << "cases:";
  for (int c : r.case_ids) std::cout << ' ' << c;
  std::cout << "\ncomponent_regime: " << ToString(r.component_regime)
            << "\nconnectivity_regime: " << ToString(r.connectivity_regime)
            << "\nW connected: " << (r.flags.w_connected ? "yes" : "no")
            << ", bipartite: " << (r.flags.w_bipartite ? "yes" : "no")
            << "\nprod c " << ToString(r.flags.prod_c) << " 1 (prod c = " << r.params.prod_c << ")"
            << "\nc_min " << ToString(r.flags.c_min) << " 1"
            << "\nbackbone min degree: " << r.flags.backbone_min_degree
            << "\nmode: " << (r.exact ? "exact rational" : "float, tol " + std::to_string(r.tol)) << '\n';
  const auto opt = [](const char* name, const std::optional<double>& x) {
    if (x) std::cout << name << ": " << *x << '\n';
  };
  opt("eps_max", r.params.eps_max);
  opt("core_growth_d", r.params.core_growth_d);
  opt("subcritical_delta", r.params.subcritical_delta);
  opt("gap", r.params.gap);
  if (r.params.mixing_s) std::cout << "mixing_s: " << *r.params.mixing_s << '\n';
  for (const auto& w : r.warnings) std::cout << "warning: " << w << '\n';
}

int RunClassify(const std::string& matrix, double tol, bool as_json) {
  const GeneratorMatrix p = ReadMatrixFile(matrix);
  const RegimeReport r = Classify(p, tol);
  if (as_json) {
    std::cout << ReportToJson(r).dump(2) << '\n';
  } else {
    PrintReportText(r);
  }
  return 0;
}

int RunSpectrum(const std::string& matrix, int t, double eps, bool literal) {
  const GeneratorMatrix p = ReadMatrixFile(matrix);
  const DerivedQuantities d = Derive(p);
  if (!d.has_walk()) throw DomainError("walk matrix needs every column sum positive");
  const WalkSpectrum s = ComputeWalkSpectrum(d);
  json out = {{"mu", s.mu}, {"laplacian", s.lap}, {"gap", s.gap}, {"literal_gap", s.literal_gap},
              {"max_residual", s.max_residual}};
  if (s.gap > 0.0) {
    const long long steps = MixingSteps(s, d, eps, literal ? GapChoice::kLiteral : GapChoice::kConservative);
    out["eps"] = eps;
    out["mixing_s"] = steps;
    out["delta_s"] = NumberOrString(RpdDelta(d, steps));
  }
  double lambda1 = s.lap.size() > 1 ? s.lap[1] : 0.0;
  if (t > 0) {
    json kron = json::array();
    lambda1 = 0.0;
    for (const auto& [value, mult] : CollectKronSpectrum(s, t)) {
      kron.push_back({{"value", value}, {"multiplicity", ToString(mult)}});
      if (lambda1 == 0.0 && value > 1e-12) lambda1 = value;
    }
    out["t"] = t;
    out["kron_spectrum"] = kron;
  }
  out["lambda1"] = lambda1;
  const CheegerInterval ch = CheegerFromLambda(lambda1);
  out["cheeger"] = {ch.lo, ch.hi};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int RunSample(const std::string& matrix, int t, std::uint64_t seed, int workers, const std::string& out) {
  const GeneratorMatrix p = ReadMatrixFile(matrix);
  const SampledGraph g = Sample(p, t, seed, workers);
  if (out.empty() || out == "-") {
    WriteEdgesText(std::cout, g);
  } else {
    WriteEdgesFile(out, g);
  }
  return 0;
}

int RunStats(const std::string& graph, bool diameter, int vertex_sample, bool as_json,
             const std::string& matrix) {
  const SampledGraph g = ReadEdgesFile(graph);
  const ComponentStats st = ComputeComponentStats(g);
  json out = {{"k", g.k}, {"t", g.t}, {"n", g.n}, {"seed", g.seed}, {"m", st.m},
              {"isolated", st.isolated}, {"largest", st.largest},
              {"second_largest", st.second_largest}, {"largest_fraction", st.largest_fraction},
              {"component_count", st.component_count}};
  std::optional<CsrGraph> csr;
  if (diameter || vertex_sample > 0) csr = CsrGraph::FromEdges(g.n, g.edges);
  if (diameter) {
    if (g.n <= kExactDiameterMaxN) {
      out["diameter"] = DiameterExact(*csr);
    } else {
      out["diameter_lower_bound"] = DiameterLowerBound(*csr, g.seed).lower_bound;
    }
  }
  if (vertex_sample > 0 && g.n > 0) {
    if (matrix.empty()) throw ValidationError("--vertex-sample needs the generator matrix (-m)");
    const GeneratorMatrix p = ReadMatrixFile(matrix);
    if (p.k() != g.k) throw ValidationError("matrix k does not match the edge file");
    CounterStream stream(g.seed, 1);
    std::vector<std::uint64_t> vs;
    for (int i = 0; i < vertex_sample; ++i) vs.push_back(stream.NextU64() % g.n);
    json rows = json::array();
    for (const DegreeRow& r : DegreeVsExpected(*csr, p, g.t, vs)) {
      json row = {{"id", r.id}, {"degree", r.degree}, {"expected", r.expected},
                  {"ratio", NumberOrString(r.ratio)}};
      if (csr->degree(r.id) > 0) {
        const NeighborSignatureStats ns = NeighborSignatures(*csr, p, g.t, r.id);
        row["neighbor_max_dev"] = ns.max_dev;
        row["neighbor_within_radius"] = ns.within_radius;
        row["radius"] = ns.radius;
      }
      rows.push_back(row);
    }
    out["vertices"] = rows;
  }
  if (as_json) {
    std::cout << out.dump(2) << '\n';
  } else {
    for (const auto& [key, value] : out.items()) {
      if (key != "vertices") std::cout << key << ": " << value.dump() << '\n';
    }
    if (out.contains("vertices")) {
      for (const auto& row : out["vertices"]) std::cout << "vertex " << row.dump() << '\n';
    }
  }
  return 0;
}

int RunExperimentCmd(const std::string& config, const std::string& out_path) {
  ExperimentConfig cfg = LoadExperimentConfig(config);
  if (!out_path.empty()) cfg.output_path = out_path;
  if (cfg.output_path.empty()) throw ValidationError("no output path (--out or output = ...)");
  const GeneratorMatrix p = ReadMatrixFile(cfg.matrix_path);
  cfg.matrix = p;
  const ExperimentResult result = RunExperiment(cfg);
  WriteExperimentOutputs(result, p, cfg.output_path);
  int failed = 0;
  for (const auto& row : result.rows) failed += row.error.has_value();
  std::cerr << result.rows.size() << " rows written to " << cfg.output_path;
  if (failed) std::cerr << " (" << failed << " with errors)";
  std::cerr << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic Kronecker graph toolkit"};
  app.require_subcommand(1);

  std::string matrix;
  double tol = kDefaultClassifyTol;
  bool as_json = false;
  auto* classify = app.add_subcommand("classify", "Predict the regime of a generator matrix");
  classify->add_option("-m,--matrix", matrix, "Matrix JSON file")->required();
  classify->add_option("--tol", tol, "Knife-edge tolerance for float input");
  classify->add_flag("--json", as_json, "Print the report as JSON");

  int t = 0;
  double eps = 0.1;
  bool literal = false;
  auto* spectrum = app.add_subcommand("spectrum", "Walk spectrum, mixing steps and Kronecker spectrum");
  spectrum->add_option("-m,--matrix", matrix, "Matrix JSON file")->required();
  spectrum->add_option("-t", t, "Kronecker power to expand (0: skip)");
  spectrum->add_option("--eps", eps, "Target relative deviation for mixing steps");
  spectrum->add_flag("--literal-gap", literal, "Use max(|1-mu_1|, |mu_{k-1}-1|) as the gap");

  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
  auto* sample = app.add_subcommand("sample", "Sample a graph");
  sample->add_option("-m,--matrix", matrix, "Matrix JSON file")->required();
  sample->add_option("-t", t, "Kronecker power")->required();
  sample->add_option("--seed", seed, "Random seed");
  sample->add_option("--workers", workers, "Worker threads (output is independent of this)");
  sample->add_option("-o,--out", out, "Edge file; .bin selects the binary format");

  std::string graph;
  bool diameter = false;
  int vertex_sample = 0;
  auto* stats = app.add_subcommand("stats", "Component and distance statistics of an edge file");
  stats->add_option("-g,--graph", graph, "Edge file (text or binary)")->required();
  stats->add_flag("--diameter", diameter, "Exact diameter for n <= 4096, else a lower bound");
  stats->add_option("--vertex-sample", vertex_sample, "Compare this many vertex degrees to expectation");
  stats->add_option("-m,--matrix", matrix, "Matrix JSON file (for --vertex-sample)");
  stats->add_flag("--json", as_json, "Print JSON");

  std::string config;
  auto* experiment = app.add_subcommand("experiment", "Run a regime sweep");
  experiment->add_option("--config", config, "Experiment config file")->required();
  experiment->add_option("--out", out, "CSV output path");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*classify) return RunClassify(matrix, tol, as_json);
    if (*spectrum) return RunSpectrum(matrix, t, eps, literal);
    if (*sample) return RunSample(matrix, t, seed, workers, out);
    if (*stats) return RunStats(graph, diameter, vertex_sample, as_json, matrix);
    if (*experiment) return RunExperimentCmd(config, out);
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
