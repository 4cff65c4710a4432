#pragma once

// CSV datasets and deterministic text serialisation. Every double is written
// with 17 significant digits so that files round-trip exactly.

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "robfrechet/dataset.hpp"
#include "robfrechet/responses.hpp"

namespace robfrechet {

using Json = nlohmann::ordered_json;

enum class CovariateTransform { None, Quadratic };

std::string_view transform_name(CovariateTransform t) noexcept;
CovariateTransform parse_transform(std::string_view name);
std::string_view kind_name(ResponseKind kind) noexcept;
ResponseKind parse_kind(std::string_view name);

// Quadratic appends the square of every column.
Eigen::MatrixXd apply_transform(const Eigen::MatrixXd& covariates, CovariateTransform t);

// "%.17g"; non-finite values become "inf", "-inf" or "nan".
std::string format_double(double v);
// Parses a finite double; ParseError mentions `where` on failure.
double parse_double(std::string_view text, std::string_view where);

// One row per observation, numeric columns; a first row that does not parse
// as numbers is taken as a header.
Eigen::MatrixXd load_covariates(const std::filesystem::path& path);
// Matrix kind: q*q row-major values per row (optional header). Distribution
// kind: the first row is the quantile grid, then one observation per row.
ResponseSet load_responses(const std::filesystem::path& path, ResponseKind kind);
Dataset load_dataset(const std::filesystem::path& covariates, const std::filesystem::path& responses,
                     ResponseKind kind, CovariateTransform transform = CovariateTransform::None);

void save_covariates(const std::filesystem::path& path, const Eigen::MatrixXd& covariates);
void save_responses(const std::filesystem::path& path, const ResponseSet& responses);
void save_dataset(const std::filesystem::path& covariates, const std::filesystem::path& responses,
                  const Dataset& data);

// Two-space indented JSON with keys in insertion order and doubles as in
// format_double (non-finite values are written as strings).
std::string dump_json(const Json& value);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace robfrechet
