#pragma once

#include <map>
#include <string>
#include <vector>

#include "ultra/config.hpp"
#include "ultra/spectral.hpp"
#include "ultra/verdict.hpp"
#include "ultra/weight_function.hpp"
#include "ultra/weight_matrix.hpp"
#include "ultra/weight_sequence.hpp"

namespace ultra::io {

/// Deterministic float formatting: 12 significant digits, fixed notation
/// rules, no locale.  Used for every number that reaches a report.
std::string fmt(double v);

/// Malformed-file errors carry the offending path and field.
struct FileError : std::runtime_error {
    FileError(const std::string& path, const std::string& field, const std::string& what);
    std::string path;
    std::string field;
};

// Sequence file: {"name": str, "K": int, "log_values": [float; K+1], "meta": {}}
// log_values[0] must be 0.0.
seqcore::WeightSequence load_sequence(const std::string& path);
void save_sequence(const seqcore::WeightSequence& M, const std::string& path,
                   const std::map<std::string, std::string>& meta = {});

// Weight-function file: {"family": "power"|"log-power"|"table", "params": {...}, "t_max": float}
omega::WeightFunction load_weight_function(const std::string& path);
void save_weight_function(const omega::WeightFunction& w, const std::string& path);

// Matrix index file: {"lambdas": [...], "sequence_files": [...]}
matrices::WeightMatrix load_matrix(const std::string& index_path);
void save_matrix(const matrices::WeightMatrix& mm, const std::string& index_path);

// Operator file: JSON list of operators, each a list of {"coeff", "multi_index"}.
spectral::OperatorSystem load_operator(const std::string& path, int dim);
void save_operator(const spectral::OperatorSystem& P, const std::string& path);

/// Norm-table CSV with columns (word_or_alpha, log_norm, cutoff_flag).
std::string norm_table_csv(const spectral::NormTable& t);

std::string verdict_json(const Verdict& v);
std::string report_json(const Report& r);
std::string classification_json(const spectral::Classification& c);

/// Writes content to path, creating parent directories.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace ultra::io
