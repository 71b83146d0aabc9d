#include "nos/json_io.hpp"

#include "nos/errors.hpp"

namespace nos {

namespace {

Json entries_of(const FpVector& v) { return Json(std::vector<Residue>(v.entries().begin(), v.entries().end())); }

FpVector vector_from_entries(PrimeModulus p, const Json& entries) {
  return FpVector(p, entries.get<std::vector<Residue>>());
}

Json indices(const std::vector<std::size_t>& v) { return Json(v); }

}  // namespace

Json to_json(const FpVector& v) {
  Json j;
  j["p"] = v.p();
  j["dim"] = v.dim();
  j["entries"] = entries_of(v);
  return j;
}

FpVector vector_from_json(const Json& j) {
  FpVector v(PrimeModulus(j.at("p").get<std::uint32_t>()), j.at("entries").get<std::vector<Residue>>());
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != v.dim())
    throw PreconditionError("vector 'dim' disagrees with its entry count");
  return v;
}

Json to_json(std::span<const FpVector> vs) {
  Json arr = Json::array();
  for (const auto& v : vs) arr.push_back(to_json(v));
  return arr;
}

std::vector<FpVector> vector_set_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) {
    if (j.contains("report")) return vector_set_from_json(j.at("report"));
    if (j.contains("vectors"))
      arr = &j.at("vectors");
    else if (j.contains("result"))
      arr = &j.at("result");
    else
      throw PreconditionError("expected a 'vectors' or 'result' array");
  }
  if (!arr->is_array()) throw PreconditionError("vector set must be a JSON array");
  std::vector<FpVector> out;
  for (const auto& e : *arr) out.push_back(vector_from_json(e));
  return out;
}

Json to_json(const TensorFactorization& f) {
  Json j;
  j["p"] = f.product().p();
  j["t"] = f.base_dim();
  j["m"] = f.order();
  Json factors = Json::array();
  for (const auto& v : f.factors()) factors.push_back(entries_of(v));
  j["factors"] = factors;
  return j;
}

TensorFactorization factorization_from_json(const Json& j) {
  const PrimeModulus p(j.at("p").get<std::uint32_t>());
  std::vector<FpVector> factors;
  for (const auto& e : j.at("factors")) factors.push_back(vector_from_entries(p, e));
  TensorFactorization f(std::move(factors));
  if (j.contains("t") && j.at("t").get<std::size_t>() != f.base_dim()) throw PreconditionError("factor 't' mismatch");
  if (j.contains("m") && j.at("m").get<std::size_t>() != f.order()) throw PreconditionError("factor 'm' mismatch");
  return f;
}

Json to_json(const SubspaceBasis& w) {
  Json j;
  j["p"] = w.modulus().value();
  j["ambient_dim"] = w.ambient_dim();
  Json rows = Json::array();
  for (const auto& r : w.rows()) rows.push_back(entries_of(r));
  j["rows"] = rows;
  return j;
}

SubspaceBasis subspace_from_json(const Json& j) {
  const PrimeModulus p(j.at("p").get<std::uint32_t>());
  const auto ambient = j.at("ambient_dim").get<std::size_t>();
  std::vector<FpVector> rows;
  for (const auto& e : j.at("rows")) rows.push_back(vector_from_entries(p, e));
  return span(p, ambient, rows);
}

Json to_json(const Verdict& v) {
  Json j;
  j["outcome"] = to_string(v.outcome);
  j["witness_kind"] = v.witness_kind;
  j["witness"] = indices(v.witness);
  j["witness2"] = indices(v.witness2);
  j["nodes"] = v.nodes;
  j["detail"] = v.detail;
  return j;
}

Json to_json(const ConstructionParams& p) {
  Json j;
  j["p"] = p.p.value();
  j["t"] = p.t;
  j["m"] = p.m;
  j["n"] = p.n;
  j["k"] = p.k;
  j["d"] = p.d;
  j["mode"] = to_string(p.mode);
  return j;
}

Json to_json(const ConstructionRun& run) {
  Json j;
  j["params"] = to_json(run.params);
  j["seed"] = run.seed;
  j["max_retries"] = run.max_retries;
  j["retries_used"] = run.retries_used;
  j["samples_drawn"] = run.samples_drawn;
  j["max_multiplicity"] = run.max_multiplicity;
  j["size"] = run.result.size();
  j["verdict"] = to_json(run.verdict);
  j["result"] = to_json(std::span<const FpVector>(run.result));
  return j;
}

Json to_json(const SpectrumReport& r) {
  Json j;
  j["p"] = r.p;
  j["t"] = r.t;
  j["order"] = r.order;
  j["degree"] = r.degree;
  j["top"] = r.top;
  j["lambda_max_abs_rest"] = r.lambda_max_abs_rest;
  j["lambda_bound"] = r.lambda_bound;
  j["trace"] = r.trace;
  j["sweeps"] = r.sweeps;
  j["pass"] = r.pass;
  j["eigenvalues"] = r.eigenvalues;
  return j;
}

Json to_json(const MixingReport& r) {
  Json j;
  j["size1"] = r.size1;
  j["size2"] = r.size2;
  j["edges"] = r.edges;
  j["expected"] = r.expected;
  j["deviation"] = r.deviation;
  j["bound"] = r.bound;
  j["holds"] = r.holds;
  return j;
}

Json to_json(const CrossBoundReport& r) {
  Json j;
  j["p"] = r.p;
  j["t"] = r.t;
  j["mode"] = r.mode;
  j["pairs_checked"] = r.pairs_checked;
  j["max_product"] = r.max_product;
  j["bound"] = r.bound;
  j["violations"] = r.violations;
  j["best1"] = to_json(std::span<const FpVector>(r.best1));
  j["best2"] = to_json(std::span<const FpVector>(r.best2));
  return j;
}

Json to_json(const GIdentityReport& r) {
  Json j;
  j["p"] = r.p;
  j["t"] = r.t;
  j["pairs"] = r.pairs;
  j["identity_violations"] = r.identity_violations;
  j["biconditional_violations"] = r.biconditional_violations;
  j["ok"] = r.ok();
  return j;
}

Json to_json(const CoverPair& c) {
  Json j;
  j["c1"] = to_json(std::span<const FpVector>(c.c1));
  j["c2"] = to_json(std::span<const FpVector>(c.c2));
  j["w1"] = to_json(c.w1);
  j["w2"] = to_json(c.w2);
  j["product"] = c.c1.size() * c.c2.size();
  return j;
}

Json to_json(const CountReport& r) {
  Json j;
  j["p"] = r.p;
  j["t"] = r.t;
  j["candidates"] = r.candidates;
  j["total_sets"] = r.total_sets.str();
  j["nonempty_sets"] = r.nonempty_sets.str();
  j["largest_size"] = r.largest_set.size();
  j["largest_set"] = to_json(std::span<const FpVector>(r.largest_set));
  j["lower_bound_witness"] = to_json(std::span<const FpVector>(r.lower_bound_witness));
  return j;
}

Json to_json(const WitnessGraph& w) {
  Json j;
  j["n"] = w.graph.order();
  j["k"] = w.k;
  j["mode"] = to_string(w.mode);
  j["edges"] = w.graph.edge_count();
  j["clique_bound"] = w.clique_bound;
  j["xi_upper"] = w.xi_upper;
  j["clique_cover_greedy"] = w.clique_cover_greedy;
  j["clique_cover_exact"] = w.clique_cover_exact ? Json(*w.clique_cover_exact) : Json(nullptr);
  j["clique_cover_upper"] = w.clique_cover_upper;
  j["independence_lower"] = w.independence_lower;
  return j;
}

Json to_json(const RatioReport& r) {
  Json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["cover_lower"] = r.cover_lower;
  j["ratio"] = std::to_string(r.ratio.numerator()) + "/" + std::to_string(r.ratio.denominator());
  j["value"] = r.value;
  return j;
}

}  // namespace nos
