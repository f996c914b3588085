#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <variant>

#include "egs/estimator.hpp"

namespace egs {

enum class Units { Decimal, Percent };

struct IngestConfig {
  std::string path;
  /// Header name or 0-based column index. A name requires `header`.
  std::variant<std::string, std::size_t> column = std::size_t{0};
  Units units = Units::Decimal;
  /// Input holds returns (profit positive); negate them into losses.
  bool negate_returns = true;
  bool header = false;
  char delimiter = ',';
};

/// Reads one numeric column. Blank lines and lines starting with '#' are skipped.
/// Throws DataError (with the 1-based line number) on unreadable input, non-numeric or
/// non-finite cells, missing columns and empty series.
EmpiricalSample ingest(const IngestConfig& config);
EmpiricalSample parse_series(std::istream& in, const IngestConfig& config);

}  // namespace egs
