#include "bec1d/table_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bec1d {

namespace {

std::string x_column(const SpectrumTable& table) {
  return table.kind == "bragg" ? "delta_q" : "delta";
}

std::vector<std::string> columns(const SpectrumTable& table) {
  if (table.kind == "bragg")
    return {"delta_q", "R", "T", "L", "cutoff", "converged"};
  return {"delta", "T", "R", "L", "cutoff", "converged"};
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size()) return v;
  if (s == "nan") return std::nan("");
  throw std::runtime_error("malformed number: " + std::string(s));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                       std::chars_format::scientific, 16);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const SpectrumTable& table) {
  for (const auto& [k, v] : table.metadata) out << "# " << k << '=' << v << '\n';
  const auto cols = columns(table);
  for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  const bool bragg = table.kind == "bragg";
  for (const auto& r : table.rows) {
    out << format_double(r.x) << ',' << format_double(bragg ? r.R : r.T) << ','
        << format_double(bragg ? r.T : r.R) << ',' << format_double(r.L) << ','
        << r.cutoff << ',' << (r.converged ? 1 : 0) << '\n';
  }
}

void write_json(std::ostream& out, const SpectrumTable& table) {
  nlohmann::ordered_json j;
  j["kind"] = table.kind;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.metadata) meta[k] = v;
  j["metadata"] = meta;
  j["columns"] = columns(table);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  const std::string x = x_column(table);
  for (const auto& r : table.rows) {
    nlohmann::ordered_json row;
    row[x] = r.x;
    row["T"] = r.T;
    row["R"] = r.R;
    row["L"] = r.L;
    row["cutoff"] = r.cutoff;
    row["converged"] = r.converged;
    rows.push_back(row);
  }
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

SpectrumTable read_csv(std::istream& in) {
  SpectrumTable table;
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("malformed metadata line: " + line);
      table.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (header.empty()) {
      header = split(line, ',');
      table.kind = header.at(0) == "delta_q" ? "bragg" : "spectrum";
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() < 4) throw std::runtime_error("short csv row: " + line);
    SpectrumRow r;
    r.x = parse_double(f[0]);
    const bool bragg = table.kind == "bragg";
    r.T = parse_double(bragg ? f[2] : f[1]);
    r.R = parse_double(bragg ? f[1] : f[2]);
    r.L = parse_double(f[3]);
    if (f.size() > 4) r.cutoff = std::stoi(f[4]);
    if (f.size() > 5) r.converged = f[5] == "1";
    table.rows.push_back(r);
  }
  if (header.empty()) throw std::runtime_error("csv without header");
  return table;
}

SpectrumTable read_json(std::istream& in) {
  const nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
  SpectrumTable table;
  table.kind = j.at("kind").get<std::string>();
  for (const auto& [k, v] : j.at("metadata").items())
    table.metadata.emplace_back(k, v.get<std::string>());
  const std::string x = x_column(table);
  for (const auto& row : j.at("rows")) {
    SpectrumRow r;
    r.x = row.at(x).get<double>();
    r.T = row.at("T").is_null() ? std::nan("") : row.at("T").get<double>();
    r.R = row.at("R").is_null() ? std::nan("") : row.at("R").get<double>();
    r.L = row.at("L").is_null() ? std::nan("") : row.at("L").get<double>();
    r.cutoff = row.at("cutoff").get<int>();
    r.converged = row.at("converged").get<bool>();
    table.rows.push_back(r);
  }
  return table;
}

}  // namespace bec1d
