#include "hpilg/records.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hpilg/error.hpp"

namespace hpilg {

namespace {

template <class T>
T parse_field(std::string_view text, std::size_t line) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw Error("records: cannot parse field '" + std::string(text) + "' on line " + std::to_string(line));
  return value;
}

}  // namespace

const std::string& records_header() {
  static const std::string header =
      "p,layers,elements,n_free,iterations,error_energy,flops_factor,flops_iterate_total,flops_total,"
      "wall_seconds";
  return header;
}

std::string format_real(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, end);
}

void write_records(std::ostream& os, const std::vector<ConvergenceRecord>& records) {
  os << records_header() << '\n';
  for (const ConvergenceRecord& r : records)
    os << r.p << ',' << r.layers << ',' << r.elements << ',' << r.n_free << ',' << r.iterations << ','
       << format_real(r.error_energy) << ',' << r.flops_factor << ',' << r.flops_iterate_total << ','
       << r.flops_total << ',' << format_real(r.wall_seconds) << '\n';
}

void emit_records(const std::vector<ConvergenceRecord>& records, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write records file " + path.string());
  write_records(os, records);
  if (!os) throw Error("error while writing records file " + path.string());
}

std::vector<ConvergenceRecord> parse_records(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != records_header()) throw Error("records: missing or wrong header");
  std::vector<ConvergenceRecord> out;
  std::size_t number = 1;
  while (std::getline(is, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 10) throw Error("records: expected 10 fields on line " + std::to_string(number));
    ConvergenceRecord r;
    r.p = parse_field<int>(f[0], number);
    r.layers = parse_field<int>(f[1], number);
    r.elements = parse_field<std::size_t>(f[2], number);
    r.n_free = parse_field<std::size_t>(f[3], number);
    r.iterations = parse_field<int>(f[4], number);
    r.error_energy = parse_field<double>(f[5], number);
    r.flops_factor = parse_field<std::uint64_t>(f[6], number);
    r.flops_iterate_total = parse_field<std::uint64_t>(f[7], number);
    r.flops_total = parse_field<std::uint64_t>(f[8], number);
    r.wall_seconds = parse_field<double>(f[9], number);
    out.push_back(r);
  }
  return out;
}

std::vector<ConvergenceRecord> read_records(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open records file " + path.string());
  return parse_records(is);
}

}  // namespace hpilg
