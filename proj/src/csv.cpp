#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "fastppr/bench.hpp"

namespace fastppr {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quote in CSV row");
  return fields;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("bad number in CSV: '" + s + "'");
  }
  if (used != s.size()) throw std::runtime_error("bad number in CSV: '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("bad integer in CSV: '" + s + "'");
  }
  return v;
}

}  // namespace

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : records) {
    out << quote(r.graph) << ',' << to_string(r.algorithm) << ',' << r.source << ',' << r.target
        << ',' << fmt(r.delta) << ',' << fmt(r.estimate) << ','
        << (r.truth ? fmt(*r.truth) : "") << ',' << (r.rel_err ? fmt(*r.rel_err) : "") << ','
        << fmt(r.forward_ms) << ',' << fmt(r.reverse_ms) << ',' << fmt(r.total_ms) << ','
        << r.walks << ',' << r.pushes << ',' << r.seed << '\n';
  }
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBenchCsvHeader) {
    throw std::runtime_error("unexpected bench CSV header");
  }
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_row(line);
    if (f.size() != 14) throw std::runtime_error("bench CSV row has wrong field count");
    BenchRecord r;
    r.graph = f[0];
    r.algorithm = parse_algorithm(f[1]);
    r.source = static_cast<NodeId>(parse_u64(f[2]));
    r.target = static_cast<NodeId>(parse_u64(f[3]));
    r.delta = parse_double(f[4]);
    r.estimate = parse_double(f[5]);
    if (!f[6].empty()) r.truth = parse_double(f[6]);
    if (!f[7].empty()) r.rel_err = parse_double(f[7]);
    r.forward_ms = parse_double(f[8]);
    r.reverse_ms = parse_double(f[9]);
    r.total_ms = parse_double(f[10]);
    r.walks = parse_u64(f[11]);
    r.pushes = parse_u64(f[12]);
    r.seed = parse_u64(f[13]);
    records.push_back(std::move(r));
  }
  return records;
}

void write_ccdf_csv(std::ostream& out, const std::vector<CcdfRow>& rows) {
  out << "threshold,fraction\n";
  for (const auto& r : rows) out << fmt(r.threshold) << ',' << fmt(r.fraction) << '\n';
}

void write_balance_csv(std::ostream& out, const std::vector<BalanceRow>& rows) {
  out << "percentile,target,fast_forward_ms,fast_reverse_ms,balanced_forward_ms,"
         "balanced_reverse_ms\n";
  for (const auto& r : rows) {
    out << r.percentile << ',' << r.target << ',' << fmt(r.fast_forward_ms) << ','
        << fmt(r.fast_reverse_ms) << ',' << fmt(r.balanced_forward_ms) << ','
        << fmt(r.balanced_reverse_ms) << '\n';
  }
}

}  // namespace fastppr
