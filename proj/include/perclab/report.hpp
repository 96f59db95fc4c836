#pragma once

// Serialization of results: JSON (via nlohmann::json's to_json hooks, so
// `nlohmann::json j = report;` works) and the fixed CSV schema for estimates.

#include <string>

#include "json.hpp"
#include "perclab/oracle.hpp"
#include "perclab/renorm.hpp"
#include "perclab/rsw.hpp"

namespace perclab {

/// Shortest decimal that round-trips.
std::string format_double(double x);

inline constexpr const char* kCsvHeader = "region,event,p,samples,successes,p_hat,ci_lo,ci_hi,seed";
std::string csv_row(const Estimate& e);

void to_json(nlohmann::json& j, const Vertex& v);
void to_json(nlohmann::json& j, const PathWitness& w);
void to_json(nlohmann::json& j, const Estimate& e);
void to_json(nlohmann::json& j, const Interval& i);
void to_json(nlohmann::json& j, const Polynomial& poly);
void to_json(nlohmann::json& j, const ExactResult& r);
void to_json(nlohmann::json& j, const SelfDualityReport& r);
void to_json(nlohmann::json& j, const HarrisReport& r);
void to_json(nlohmann::json& j, const XBoundReport& r);
void to_json(nlohmann::json& j, const DualityReport& r);
void to_json(nlohmann::json& j, const LevelSearch& s);
void to_json(nlohmann::json& j, const ThresholdReport& r);
void to_json(nlohmann::json& j, const ClusterStats& s);
void to_json(nlohmann::json& j, const RSWReport& r);
void to_json(nlohmann::json& j, const AnnulusReport& r);
void to_json(nlohmann::json& j, const CoveringReport& r);
void to_json(nlohmann::json& j, const SqrtTrickReport& r);
void to_json(nlohmann::json& j, const EmbeddingAudit& r);
void to_json(nlohmann::json& j, const ProductLawReport& r);
void to_json(nlohmann::json& j, const IndependenceReport& r);
void to_json(nlohmann::json& j, const DoublingReport& r);

/// Witness with the context needed to re-check it.
nlohmann::json witness_json(const Configuration& config, const Region& box, const PathWitness& w,
                            Direction direction);

}  // namespace perclab
