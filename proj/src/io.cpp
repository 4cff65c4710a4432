#include "robfrechet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "robfrechet/errors.hpp"

namespace robfrechet {
namespace {

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  std::vector<CsvRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(std::string_view(text).substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty()) continue;
    CsvRow row;
    row.line = line_no;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      row.fields.emplace_back(trim(line.substr(start, comma == std::string_view::npos
                                                          ? std::string_view::npos
                                                          : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool is_numeric_row(const CsvRow& row) {
  for (const std::string& f : row.fields) {
    double v;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size()) return false;
  }
  return true;
}

std::vector<double> parse_row(const std::filesystem::path& path, const CsvRow& row) {
  std::vector<double> out;
  out.reserve(row.fields.size());
  for (std::size_t c = 0; c < row.fields.size(); ++c) {
    out.push_back(parse_double(row.fields[c],
                               fmt::format("{} line {} column {}", path.string(), row.line, c + 1)));
  }
  return out;
}

// Numeric rows of equal length, skipping a leading header when allowed.
std::vector<std::vector<double>> numeric_rows(const std::filesystem::path& path,
                                              const std::vector<CsvRow>& rows, bool allow_header,
                                              std::size_t first = 0) {
  if (allow_header && first < rows.size() && !is_numeric_row(rows[first])) ++first;
  std::vector<std::vector<double>> out;
  for (std::size_t r = first; r < rows.size(); ++r) {
    out.push_back(parse_row(path, rows[r]));
    if (out.back().size() != out.front().size()) {
      fail(ErrorCode::ShapeError,
           fmt::format("{} line {}: expected {} values, found {}", path.string(), rows[r].line,
                       out.front().size(), out.back().size()));
    }
  }
  if (out.empty()) fail(ErrorCode::ParseError, fmt::format("{}: no data rows", path.string()));
  return out;
}

void dump_value(const Json& v, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const Json& e : v) scalars = scalars && !e.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          dump_value(v[i], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_value(v[i], depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "\"" + format_double(d) + "\"";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string_view transform_name(CovariateTransform t) noexcept {
  return t == CovariateTransform::Quadratic ? "quadratic" : "none";
}

CovariateTransform parse_transform(std::string_view name) {
  if (name == "none") return CovariateTransform::None;
  if (name == "quadratic") return CovariateTransform::Quadratic;
  fail(ErrorCode::InvalidArgument,
       fmt::format("unknown covariate transform '{}' (none|quadratic)", name));
}

std::string_view kind_name(ResponseKind kind) noexcept {
  return kind == ResponseKind::Matrix ? "matrix" : "distribution";
}

ResponseKind parse_kind(std::string_view name) {
  if (name == "matrix") return ResponseKind::Matrix;
  if (name == "distribution") return ResponseKind::Distribution;
  fail(ErrorCode::InvalidArgument,
       fmt::format("unknown response kind '{}' (matrix|distribution)", name));
}

Eigen::MatrixXd apply_transform(const Eigen::MatrixXd& covariates, CovariateTransform t) {
  if (t == CovariateTransform::None) return covariates;
  Eigen::MatrixXd out(covariates.rows(), covariates.cols() * 2);
  out.leftCols(covariates.cols()) = covariates;
  out.rightCols(covariates.cols()) = covariates.array().square().matrix();
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

double parse_double(std::string_view text, std::string_view where) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorCode::ParseError, fmt::format("{}: cannot parse '{}' as a number", where, text));
  }
  if (!std::isfinite(v)) {
    fail(ErrorCode::ParseError, fmt::format("{}: non-finite value '{}'", where, text));
  }
  return v;
}

Eigen::MatrixXd load_covariates(const std::filesystem::path& path) {
  const auto rows = numeric_rows(path, read_csv(path), true);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return x;
}

ResponseSet load_responses(const std::filesystem::path& path, ResponseKind kind) {
  const auto csv = read_csv(path);
  if (kind == ResponseKind::Matrix) {
    const auto rows = numeric_rows(path, csv, true);
    const std::size_t width = rows.front().size();
    const auto q = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(width))));
    if (q * q != width) {
      fail(ErrorCode::ShapeError,
           fmt::format("{}: {} values per row is not a perfect square", path.string(), width));
    }
    std::vector<double> values;
    values.reserve(rows.size() * width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      try {
        (void)SymMatrix::from_row_major(q, rows[i]);
      } catch (const Error& e) {
        fail(e.code(), fmt::format("{} observation {}: {}", path.string(), i + 1, e.what()));
      }
      values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return ResponseSet::matrices(q, std::move(values));
  }

  if (csv.empty()) fail(ErrorCode::ParseError, fmt::format("{}: empty file", path.string()));
  const std::vector<double> levels = parse_row(path, csv.front());
  QuantileGrid grid(levels);
  const auto rows = numeric_rows(path, csv, false, 1);
  if (rows.front().size() != levels.size()) {
    fail(ErrorCode::ShapeError, fmt::format("{}: grid has {} levels but rows have {} values",
                                            path.string(), levels.size(), rows.front().size()));
  }
  std::vector<double> values;
  values.reserve(rows.size() * levels.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 1; j < rows[i].size(); ++j) {
      if (rows[i][j] < rows[i][j - 1]) {
        fail(ErrorCode::InvariantError,
             fmt::format("{} observation {} (line {}): quantiles decrease at column {}",
                         path.string(), i + 1, csv[i + 1].line, j + 1));
      }
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return ResponseSet::distributions(std::move(grid), std::move(values));
}

Dataset load_dataset(const std::filesystem::path& covariates, const std::filesystem::path& responses,
                     ResponseKind kind, CovariateTransform transform) {
  Eigen::MatrixXd x = apply_transform(load_covariates(covariates), transform);
  ResponseSet ys = load_responses(responses, kind);
  if (static_cast<std::size_t>(x.rows()) != ys.size()) {
    fail(ErrorCode::ShapeError, fmt::format("{} has {} rows but {} has {}", covariates.string(),
                                            x.rows(), responses.string(), ys.size()));
  }
  return Dataset(std::move(x), std::move(ys));
}

void save_covariates(const std::filesystem::path& path, const Eigen::MatrixXd& covariates) {
  std::string out;
  for (Eigen::Index k = 0; k < covariates.cols(); ++k) {
    out += (k ? ",x" : "x") + std::to_string(k + 1);
  }
  out += "\n";
  for (Eigen::Index i = 0; i < covariates.rows(); ++i) {
    for (Eigen::Index k = 0; k < covariates.cols(); ++k) {
      if (k) out += ",";
      out += format_double(covariates(i, k));
    }
    out += "\n";
  }
  write_text(path, out);
}

void save_responses(const std::filesystem::path& path, const ResponseSet& responses) {
  std::string out;
  const auto append_row = [&](std::span<const double> row) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ",";
      out += format_double(row[j]);
    }
    out += "\n";
  };
  if (responses.kind() == ResponseKind::Distribution) append_row(responses.grid()->levels());
  for (std::size_t i = 0; i < responses.size(); ++i) append_row(responses.row(i));
  write_text(path, out);
}

void save_dataset(const std::filesystem::path& covariates, const std::filesystem::path& responses,
                  const Dataset& data) {
  save_covariates(covariates, data.covariates());
  save_responses(responses, data.responses());
}

std::string dump_json(const Json& value) {
  std::string out;
  dump_value(value, 0, out);
  out += "\n";
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorCode::IoError, fmt::format("cannot open {} for writing", path.string()));
  f << text;
  if (!f) fail(ErrorCode::IoError, fmt::format("failed writing {}", path.string()));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace robfrechet
