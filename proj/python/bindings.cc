#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skg/classify.hpp"
#include "skg/errors.hpp"
#include "skg/graphstats.hpp"
#include "skg/io.hpp"
#include "skg/sampler.hpp"
#include "skg/spectral.hpp"

namespace py = pybind11;
using namespace skg;

namespace {

// Matrices cross the boundary as matrix-file JSON text; the Python side builds it.
GeneratorMatrix Load(const std::string& matrix_json) { return ParseMatrixJson(matrix_json); }

py::array_t<std::uint64_t> EdgeArray(const std::vector<Edge>& edges) {
  py::array_t<std::uint64_t> out({static_cast<py::ssize_t>(edges.size()), py::ssize_t{2}});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    view(i, 0) = edges[i].u;
    view(i, 1) = edges[i].v;
  }
  return out;
}

py::dict StatsDict(const ComponentStats& s) {
  py::dict d;
  d["n"] = s.n;
  d["m"] = s.m;
  d["isolated"] = s.isolated;
  d["largest"] = s.largest;
  d["second_largest"] = s.second_largest;
  d["largest_fraction"] = s.largest_fraction;
  d["component_count"] = s.component_count;
  return d;
}

}  // namespace

PYBIND11_MODULE(_skg, m) {
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

  m.def("classify_json", [](const std::string& mj, double tol) {
    return ReportToJson(Classify(Load(mj), tol)).dump();
  }, py::arg("matrix_json"), py::arg("tol") = kDefaultClassifyTol);

  m.def("walk_spectrum", [](const std::string& mj) {
    const auto s = ComputeWalkSpectrum(Derive(Load(mj)));
    py::dict d;
    d["mu"] = s.mu;
    d["laplacian"] = s.lap;
    d["gap"] = s.gap;
    d["literal_gap"] = s.literal_gap;
    d["max_residual"] = s.max_residual;
    return d;
  }, py::arg("matrix_json"));

  m.def("mixing_steps", [](const std::string& mj, double eps, bool literal) {
    const auto d = Derive(Load(mj));
    return MixingSteps(ComputeWalkSpectrum(d), d, eps, literal ? GapChoice::kLiteral : GapChoice::kConservative);
  }, py::arg("matrix_json"), py::arg("eps"), py::arg("literal_gap") = false);

  m.def("rpd_delta", [](const std::string& mj, long long s) { return RpdDelta(Derive(Load(mj)), s); },
        py::arg("matrix_json"), py::arg("steps"));

  m.def("kron_spectrum", [](const std::string& mj, int t) {
    std::vector<std::pair<double, std::string>> out;
    for (const auto& [value, mult] : CollectKronSpectrum(ComputeWalkSpectrum(Derive(Load(mj))), t)) {
      out.emplace_back(value, ToString(mult));
    }
    return out;
  }, py::arg("matrix_json"), py::arg("t"));

  m.def("subcritical_delta", [](const std::string& mj) {
    const auto s = ComputeSubcriticalDelta(Derive(Load(mj)));
    py::dict d;
    d["alpha"] = s.alpha ? py::cast(*s.alpha) : py::none();
    d["delta"] = s.delta;
    d["eps"] = s.eps;
    d["equal_columns"] = s.branch == SubcriticalBranch::kEqualColumns;
    return d;
  }, py::arg("matrix_json"));

  m.def("sample", [](const std::string& mj, int t, std::uint64_t seed, int workers) {
    const GeneratorMatrix p = Load(mj);
    SampledGraph g;
    {
      py::gil_scoped_release release;
      g = Sample(p, t, seed, workers);
    }
    return EdgeArray(g.edges);
  }, py::arg("matrix_json"), py::arg("t"), py::arg("seed"), py::arg("workers") = 1);

  m.def("sample_naive", [](const std::string& mj, int t, std::uint64_t seed) {
    return EdgeArray(SampleNaive(Load(mj), t, seed).edges);
  }, py::arg("matrix_json"), py::arg("t"), py::arg("seed"));

  m.def("expected_edge_count", [](const std::string& mj, int t) { return ExpectedEdgeCount(Load(mj), t); },
        py::arg("matrix_json"), py::arg("t"));

  m.def("component_stats", [](py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast> edges,
                              std::uint64_t n) {
    if (edges.ndim() != 2 || (edges.shape(0) > 0 && edges.shape(1) != 2)) {
      throw ValidationError("edges must have shape (m, 2)");
    }
    auto view = edges.unchecked<2>();
    ComponentTracker tracker(n);
    for (py::ssize_t i = 0; i < view.shape(0); ++i) tracker.AddEdge(view(i, 0), view(i, 1));
    return StatsDict(tracker.Finish());
  }, py::arg("edges"), py::arg("n"));

  m.def("sample_stats", [](const std::string& mj, int t, std::uint64_t seed) {
    const GeneratorMatrix p = Load(mj);
    ComponentStats s;
    {
      py::gil_scoped_release release;
      ComponentTracker tracker(VertexCount(p.k(), t));
      ForEachSampledEdge(p, t, seed, [&](std::uint64_t u, std::uint64_t v) { tracker.AddEdge(u, v); });
      s = tracker.Finish();
    }
    return StatsDict(s);
  }, py::arg("matrix_json"), py::arg("t"), py::arg("seed"));
}
