#include "egs/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "egs/error.hpp"

namespace egs {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

std::string line_ref(std::size_t line) { return "line " + std::to_string(line); }

}  // namespace

EmpiricalSample parse_series(std::istream& in, const IngestConfig& config) {
  const auto* by_index = std::get_if<std::size_t>(&config.column);
  if (!by_index && !config.header) throw DataError("a named column requires a header row");
  std::size_t column = by_index ? *by_index : 0;
  bool need_header = config.header;

  std::vector<double> values;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto cells = split(text, config.delimiter);
    if (need_header) {
      need_header = false;
      if (!by_index) {
        const auto& name = std::get<std::string>(config.column);
        std::size_t i = 0;
        while (i < cells.size() && cells[i] != name) ++i;
        if (i == cells.size()) throw DataError("column '" + name + "' not found in header", lineno);
        column = i;
      }
      continue;
    }
    if (column >= cells.size())
      throw DataError(line_ref(lineno) + ": missing column " + std::to_string(column), lineno);
    const std::string_view cell = cells[column];
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
      throw DataError(line_ref(lineno) + ": non-numeric value '" + std::string(cell) + "'", lineno);
    if (!std::isfinite(v)) throw DataError(line_ref(lineno) + ": non-finite value", lineno);
    values.push_back(config.units == Units::Percent ? v / 100.0 : v);
  }
  if (in.bad()) throw DataError("read error");
  if (values.empty()) throw DataError("empty series");
  return config.negate_returns ? EmpiricalSample::from_returns(std::move(values))
                               : EmpiricalSample::from_losses(std::move(values));
}

EmpiricalSample ingest(const IngestConfig& config) {
  std::ifstream in(config.path);
  if (!in) throw DataError("cannot open '" + config.path + "'");
  return parse_series(in, config);
}

}  // namespace egs
