#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rado/dor.hpp"
#include "rado/search.hpp"
#include "rado/solver.hpp"
#include "rado/symbolic.hpp"

namespace rado {

nlohmann::json to_json(const SolverStats& s);
nlohmann::json to_json(const InfinityJustification& j);
InfinityJustification justification_from_json(const nlohmann::json& j);
nlohmann::json to_json(const UpperBound& b);

/// Result document for one R_k computation. The coloring itself is not
/// embedded; callers store it separately and reference it by hash.
nlohmann::json search_result_json(const LinearEquation& eq, int k, const SearchOutcome& o);
nlohmann::json dor_result_json(const LinearEquation& eq, const DorResult& r);
nlohmann::json instantiation_json(const ParametricFamily& fam, const InstantiationReport& r);

/// A file written by a command, identified by its content hash.
struct Artifact {
  std::string role;
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::string backend;
  std::vector<Artifact> artifacts;
  std::string started, finished;  // UTC, ISO 8601
  std::string outcome;
  std::string outcome_digest;  // sha256 of the result document

  nlohmann::json to_json() const;
};

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace rado
