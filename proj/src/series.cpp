#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "nlslab/harness.hpp"

namespace nlslab {

DiagnosticSeries::DiagnosticSeries(std::vector<ColumnInfo> columns)
    : columns_(std::move(columns)), data_(columns_.size()) {
  if (columns_.empty() || columns_.front().name != "t")
    throw DataError("series: the first column must be t");
  for (std::size_t i = 0; i < columns_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (columns_[i].name == columns_[j].name)
        throw DataError("series: duplicate column " + columns_[i].name);
}

bool DiagnosticSeries::has(const std::string& name) const {
  for (const auto& c : columns_)
    if (c.name == name) return true;
  return false;
}

const std::vector<double>& DiagnosticSeries::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].name == name) return data_[i];
  throw DataError("series: no column " + name);
}

void DiagnosticSeries::add_row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) throw DataError("series: row width mismatch");
  if (!std::isfinite(values[0])) throw DataError("series: non-finite time");
  if (rows() > 0 && !(values[0] > data_[0].back()))
    throw DataError("series: times must be strictly increasing");
  for (std::size_t i = 0; i < values.size(); ++i) data_[i].push_back(values[i]);
}

std::string DiagnosticSeries::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i].name;
  out += '\n';
  char buf[32];
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", data_[i][r]);
      if (i) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

DiagnosticSeries DiagnosticSeries::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("series: empty CSV");
  std::vector<ColumnInfo> cols;
  {
    std::stringstream hs(line);
    std::string name;
    while (std::getline(hs, name, ',')) cols.push_back({name, "", ""});
  }
  DiagnosticSeries s(std::move(cols));
  std::vector<double> row(s.columns_.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(ls, cell, ',')) {
      if (i >= row.size()) throw DataError("series: too many cells in a row");
      try {
        std::size_t used = 0;
        row[i] = std::stod(cell, &used);
        if (used != cell.size()) throw DataError("series: bad number '" + cell + "'");
      } catch (const std::invalid_argument&) {
        throw DataError("series: bad number '" + cell + "'");
      } catch (const std::out_of_range&) {
        throw DataError("series: number out of range '" + cell + "'");
      }
      ++i;
    }
    if (i != row.size()) throw DataError("series: too few cells in a row");
    s.add_row(row);
  }
  return s;
}

std::string DiagnosticSeries::schema_json() const {
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const auto& c : columns_)
    cols.push_back({{"name", c.name}, {"unit", c.unit}, {"description", c.description}});
  nlohmann::ordered_json j;
  j["format"] = "csv";
  j["rows"] = rows();
  j["columns"] = cols;
  return j.dump(2) + "\n";
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::scattering_like: return "scattering-like";
    case Classification::global_bounded: return "global-bounded";
    case Classification::blowup: return "blowup";
    case Classification::untrusted: return "untrusted";
  }
  return "untrusted";
}

Classification classify_regime(const ClassificationInputs& in) {
  switch (in.outcome) {
    case RunOutcome::resolution_lost:
      return Classification::untrusted;
    case RunOutcome::blowup_detected:
      return in.monitor_clean ? Classification::blowup : Classification::untrusted;
    case RunOutcome::completed:
      break;
  }
  double k0 = in.kinetic.empty() ? 0.0 : in.kinetic.front();
  double sup = 0.0;
  for (double k : in.kinetic) {
    if (!std::isfinite(k)) return Classification::untrusted;
    sup = std::max(sup, k);
  }
  const bool bounded = sup <= in.growth_limit * std::max(k0, std::abs(in.energy0));
  if (!bounded) return Classification::untrusted;
  for (const auto& inc : in.increments)
    if (inc.t >= in.t_start - 1e-9 && inc.increment < in.threshold)
      return Classification::scattering_like;
  return Classification::global_bounded;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace nlslab
