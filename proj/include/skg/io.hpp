#ifndef SKG_IO_HPP_
#define SKG_IO_HPP_

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "skg/classify.hpp"
#include "skg/genmatrix.hpp"
#include "skg/sampler.hpp"

namespace skg {

// {"k": int, "entries": [[...]], "rational": optional [["num/den", ...]]}
GeneratorMatrix ParseMatrixJson(const std::string& text);
GeneratorMatrix ReadMatrixFile(const std::string& path);
nlohmann::json MatrixToJson(const GeneratorMatrix& p);

nlohmann::json ReportToJson(const RegimeReport& r);

// Text: "# skg-edges v1", "# k=<k> t=<t> n=<n> seed=<s>", then "u v" lines.
void WriteEdgesText(std::ostream& os, const SampledGraph& g);
// Binary: "SKG1", then little-endian u64 k, t, n, seed, edge_count, then pairs.
void WriteEdgesBinary(std::ostream& os, const SampledGraph& g);
void WriteEdgesFile(const std::string& path, const SampledGraph& g);  // .bin selects binary
// Reads either format, detected from the first bytes.
SampledGraph ReadEdges(std::istream& is);
SampledGraph ReadEdgesFile(const std::string& path);

}  // namespace skg

#endif  // SKG_IO_HPP_
