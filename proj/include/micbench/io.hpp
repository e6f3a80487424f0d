#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "micbench/born.hpp"
#include "micbench/operators.hpp"
#include "micbench/process.hpp"
#include "micbench/sampling.hpp"
#include "micbench/sic.hpp"

namespace micbench {

using Json = nlohmann::json;

// Operator format: {"d": int, "re": [[...]], "im": [[...]]} row-major.
// POVM/MIC files are arrays of such objects; parsing validates invariants
// and reports the first violated one.
Json operator_to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(const Json& j);

Json povm_to_json(const Povm& povm);
Povm povm_from_json(const Json& j);
Mic mic_from_json(const Json& j);

DensityOperator density_from_json(const Json& j);

// Process format: {"mic": [...], "post_states": [...]}.
Json process_to_json(const ReferenceProcess& proc);
ReferenceProcess process_from_json(const Json& j);
Mic process_mic_from_json(const Json& j);  // reads only the "mic" member

// Fiducial format: {"d": int, "re": [...], "im": [...]}; registry files are
// arrays of these.
Json fiducial_to_json(const Fiducial& f);
Fiducial fiducial_from_json(const Json& j);

EnsembleConfig ensemble_config_from_json(const Json& j);
Json ensemble_config_to_json(const EnsembleConfig& cfg);

// report.json content; excludes runtime so identical configs reproduce
// identical bytes.
Json ensemble_report_to_json(const EnsembleReport& report);

// samples.csv content: a `# cond_max=...` header comment, the column line
// `index,seed,check,margin,violation,error`, then one row per record.
std::string ensemble_samples_csv(const EnsembleReport& report);

// Writes report.json and samples.csv into `dir` (created if needed).
void write_ensemble_outputs(const EnsembleReport& report, const std::filesystem::path& dir);

// Locale-independent %.12g.
std::string fmt12(double v);

std::string matrix_csv(const RealMatrix& m);

// Parses every number in a comma/whitespace-separated text blob.
RealVector numbers_from_csv(const std::string& text);

Json load_json_file(const std::filesystem::path& path);
std::string load_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace micbench
