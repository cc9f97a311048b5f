#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ttr/experiment.hpp"
#include "ttr/models.hpp"

namespace ttr {

// Shortest round-trip decimal rendering (via to_chars); deterministic across
// platforms, unlike stream formatting.
std::string format_double(double value);

// Profile text format: a header line `m n`, then n comma-separated
// permutations of 0..m-1, one per line. Blank lines and lines starting with
// '#' are ignored. Errors carry the origin and 1-based line number.
std::vector<LinearOrder> parse_profile(std::istream& in, const std::string& origin);
std::vector<LinearOrder> load_profile(const std::string& path);
std::string profile_to_text(const std::vector<LinearOrder>& profile);
void write_profile(const std::string& path, const std::vector<LinearOrder>& profile);

// Poll records as CSV with the fixed header `user,poll,strategy,time,dkt,moves`.
std::string records_to_csv(const std::vector<PollRecord>& records,
                           const std::string& strategy_label);
void write_records(const std::string& path, const std::vector<PollRecord>& records,
                   const std::string& strategy_label);

// Marginal matrix as m rows of comma-separated values.
std::string marginals_to_csv(const PairwiseMarginalMatrix& M);

// Model JSON: {"type": "plackett-luce"|"mallows"|"uniform", ...} with
// per-component weight/parameters, or an explicit profile. Plackett-Luce
// components accept either "theta" or "log_theta".
PreferenceModel parse_model(const nlohmann::json& doc, const std::string& origin);
PreferenceModel load_model(const std::string& path);
nlohmann::json model_to_json(const PreferenceModel& model);

// Experiment config JSON; missing optional fields take the documented
// defaults, and violations name the offending field.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc, const std::string& origin);
ExperimentConfig load_experiment_config(const std::string& path);

const char* strategy_name(RecommendationStrategy strategy);

// Whole-file helpers; failures raise IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ttr
