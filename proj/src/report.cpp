#include "mdnls/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "text.hpp"

namespace mdnls {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return detail::format_17(*d);
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  return quote(std::get<std::string>(c));
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace

void write_csv(std::ostream& out, const ExperimentReport& report) {
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << quote(report.columns[i]);
  out << '\n';
  for (const auto& row : report.rows) {
    if (row.size() != report.columns.size()) throw std::logic_error("report row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  write_csv(out, report);
  return out.str();
}

std::string summary_text(const ExperimentReport& report) {
  std::string out = "experiment: " + std::string(to_string(report.kind)) + "\n";
  for (const auto& c : report.checks) out += "check: " + c + "\n";
  for (const auto& f : report.fitted) {
    out += "fitted: " + f.name + " = " + detail::format_17(f.value) + " (rms residual " +
           detail::format_17(f.residual) + ")\n";
  }
  for (const auto& n : report.notes) out += "note: " + n + "\n";
  out += std::string("verdict: ") + (report.verdict ? "pass" : "fail") + "\n";
  return out;
}

void write_outputs(const std::filesystem::path& dir, const ExperimentReport& report, const RunConfig& config) {
  std::filesystem::create_directories(dir);
  write_file(dir / "report.csv", to_csv(report));
  write_file(dir / "summary.txt", summary_text(report));
  write_file(dir / "resolved.cfg", serialize(config));
}

}  // namespace mdnls
