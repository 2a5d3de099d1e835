#include "skg/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "skg/errors.hpp"

namespace skg {
namespace {

using nlohmann::json;

constexpr char kBinaryMagic[4] = {'S', 'K', 'G', '1'};

void PutU64(std::ostream& os, std::uint64_t x) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((x >> (8 * i)) & 0xFF);
  os.write(buf, 8);
}

std::uint64_t GetU64(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) throw ValidationError("truncated binary edge file");
  std::uint64_t x = 0;
  for (int i = 7; i >= 0; --i) x = (x << 8) | buf[i];
  return x;
}

json OptionalNumber(const std::optional<double>& x) {
  if (!x) return nullptr;
  if (std::isinf(*x)) return "inf";
  return *x;
}

void CheckGraphShape(const SampledGraph& g) {
  for (const Edge& e : g.edges) {
    if (!(e.u < e.v) || e.v >= g.n) {
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") violates u < v < n");
    }
  }
}

}  // namespace

GeneratorMatrix ParseMatrixJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("k") || !doc.contains("entries")) {
    throw ValidationError("matrix file needs keys \"k\" and \"entries\"");
  }
  const int k = doc.at("k").get<int>();
  const json& rows = doc.at("entries");
  if (k < 1 || !rows.is_array() || static_cast<int>(rows.size()) != k) {
    throw ValidationError("\"entries\" must have k = " + std::to_string(k) + " rows");
  }
  SquareMatrix m(k);
  for (int i = 0; i < k; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != k) {
      throw ValidationError("row " + std::to_string(i) + " must have " + std::to_string(k) + " entries");
    }
    for (int j = 0; j < k; ++j) {
      if (!rows[i][j].is_number()) {
        throw ValidationError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not a number");
      }
      m(i, j) = rows[i][j].get<double>();
    }
  }
  std::optional<std::vector<Rational>> exact;
  if (doc.contains("rational") && !doc.at("rational").is_null()) {
    const json& rat = doc.at("rational");
    if (!rat.is_array() || static_cast<int>(rat.size()) != k) {
      throw ValidationError("\"rational\" must have k rows");
    }
    exact.emplace(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
      if (!rat[i].is_array() || static_cast<int>(rat[i].size()) != k) {
        throw ValidationError("rational row " + std::to_string(i) + " must have k entries");
      }
      for (int j = 0; j < k; ++j) {
        const json& cell = rat[i][j];
        (*exact)[i * k + j] = ParseRational(cell.is_string() ? cell.get<std::string>() : cell.dump());
      }
    }
  }
  return GeneratorMatrix(std::move(m), std::move(exact));
}

GeneratorMatrix ReadMatrixFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseMatrixJson(buf.str());
}

json MatrixToJson(const GeneratorMatrix& p) {
  json rows = json::array();
  for (int i = 0; i < p.k(); ++i) {
    json row = json::array();
    for (int j = 0; j < p.k(); ++j) row.push_back(p(i, j));
    rows.push_back(row);
  }
  json out = {{"k", p.k()}, {"entries", rows}};
  if (p.has_rational()) {
    json rat = json::array();
    for (int i = 0; i < p.k(); ++i) {
      json row = json::array();
      for (int j = 0; j < p.k(); ++j) row.push_back(p.rational(i, j).str());
      rat.push_back(row);
    }
    out["rational"] = rat;
  }
  return out;
}

json ReportToJson(const RegimeReport& r) {
  json flags = {{"W_connected", r.flags.w_connected},
                {"W_bipartite", r.flags.w_bipartite},
                {"prod_c", ToString(r.flags.prod_c)},
                {"c1", ToString(r.flags.c_min)},
                {"backbone_min_degree", r.flags.backbone_min_degree},
                {"c_all_equal", r.flags.c_all_equal}};
  json params = {{"prod_c", r.params.prod_c},
                 {"sum_c_ln_c", OptionalNumber(r.params.sum_c_ln_c)},
                 {"eps_max", OptionalNumber(r.params.eps_max)},
                 {"core_eps", OptionalNumber(r.params.core_eps)},
                 {"core_growth_d", OptionalNumber(r.params.core_growth_d)},
                 {"subcritical_alpha", OptionalNumber(r.params.subcritical_alpha)},
                 {"subcritical_delta", OptionalNumber(r.params.subcritical_delta)},
                 {"gap", OptionalNumber(r.params.gap)}};
  params["mixing_s"] = r.params.mixing_s ? json(*r.params.mixing_s) : json(nullptr);
  return {{"case_ids", json(std::vector<int>(r.case_ids.begin(), r.case_ids.end()))},
          {"component_regime", ToString(r.component_regime)},
          {"connectivity_regime", ToString(r.connectivity_regime)},
          {"flags", flags},
          {"params", params},
          {"tolerance_mode", r.exact ? json{{"mode", "exact"}} : json{{"mode", "float"}, {"tol", r.tol}}},
          {"warnings", r.warnings}};
}

void WriteEdgesText(std::ostream& os, const SampledGraph& g) {
  os << "# skg-edges v1\n";
  os << "# k=" << g.k << " t=" << g.t << " n=" << g.n << " seed=" << g.seed << "\n";
  for (const Edge& e : g.edges) os << e.u << ' ' << e.v << '\n';
}

void WriteEdgesBinary(std::ostream& os, const SampledGraph& g) {
  os.write(kBinaryMagic, 4);
  PutU64(os, static_cast<std::uint64_t>(g.k));
  PutU64(os, static_cast<std::uint64_t>(g.t));
  PutU64(os, g.n);
  PutU64(os, g.seed);
  PutU64(os, g.edges.size());
  for (const Edge& e : g.edges) {
    PutU64(os, e.u);
    PutU64(os, e.v);
  }
}

void WriteEdgesFile(const std::string& path, const SampledGraph& g) {
  const bool binary = path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  if (binary) {
    WriteEdgesBinary(out, g);
  } else {
    WriteEdgesText(out, g);
  }
}

SampledGraph ReadEdges(std::istream& is) {
  char magic[4] = {};
  is.read(magic, 4);
  SampledGraph g;
  if (is.gcount() == 4 && std::equal(magic, magic + 4, kBinaryMagic)) {
    g.k = static_cast<int>(GetU64(is));
    g.t = static_cast<int>(GetU64(is));
    g.n = GetU64(is);
    g.seed = GetU64(is);
    const std::uint64_t count = GetU64(is);
    g.edges.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t u = GetU64(is);
      const std::uint64_t v = GetU64(is);
      g.edges.push_back({u, v});
    }
    CheckGraphShape(g);
    return g;
  }
  is.clear();
  is.seekg(0);
  std::string line;
  if (!std::getline(is, line) || line != "# skg-edges v1") {
    throw ValidationError("edge file has neither the SKG1 magic nor the text header");
  }
  if (!std::getline(is, line)) throw ValidationError("edge file is missing its parameter line");
  std::uint64_t k = 0, t = 0;
  if (std::sscanf(line.c_str(), "# k=%lu t=%lu n=%lu seed=%lu", &k, &t, &g.n, &g.seed) != 4) {
    throw ValidationError("cannot parse edge file parameter line: " + line);
  }
  g.k = static_cast<int>(k);
  g.t = static_cast<int>(t);
  std::uint64_t u, v;
  while (is >> u >> v) g.edges.push_back({u, v});
  if (!is.eof()) throw ValidationError("malformed edge line in text edge file");
  CheckGraphShape(g);
  return g;
}

SampledGraph ReadEdgesFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open edge file " + path);
  return ReadEdges(in);
}

}  // namespace skg
