#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "nos/analysis.hpp"
#include "nos/construction.hpp"
#include "nos/covers.hpp"
#include "nos/ff.hpp"
#include "nos/spectral.hpp"
#include "nos/tensor.hpp"
#include "nos/verify.hpp"

namespace nos {

using Json = nlohmann::ordered_json;

/// {"p": p, "dim": dim, "entries": [...]}
Json to_json(const FpVector& v);
FpVector vector_from_json(const Json& j);

Json to_json(std::span<const FpVector> vs);
/// Accepts a bare array of vectors, {"vectors": [...]}, a run report's "result",
/// or a whole run.json (through its "report").
std::vector<FpVector> vector_set_from_json(const Json& j);

/// {"p", "t", "m", "factors": [[...], ...]}; the product is not stored.
Json to_json(const TensorFactorization& f);
TensorFactorization factorization_from_json(const Json& j);

/// {"p", "ambient_dim", "rows": [[...], ...]}
Json to_json(const SubspaceBasis& w);
SubspaceBasis subspace_from_json(const Json& j);

/// Verdict without timing, so that run documents are reproducible.
Json to_json(const Verdict& v);
Json to_json(const ConstructionParams& p);
Json to_json(const ConstructionRun& run);
Json to_json(const SpectrumReport& r);
Json to_json(const MixingReport& r);
Json to_json(const CrossBoundReport& r);
Json to_json(const GIdentityReport& r);
Json to_json(const CoverPair& c);
Json to_json(const CountReport& r);
Json to_json(const WitnessGraph& w);
Json to_json(const RatioReport& r);

}  // namespace nos
