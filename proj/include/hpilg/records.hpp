#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hpilg {

struct ConvergenceRecord {
  int p = 0;
  int layers = 0;
  std::size_t elements = 0;
  std::size_t n_free = 0;
  int iterations = 0;
  double error_energy = 0.0;
  std::uint64_t flops_factor = 0;
  std::uint64_t flops_iterate_total = 0;
  std::uint64_t flops_total = 0;
  double wall_seconds = 0.0;

  friend bool operator==(const ConvergenceRecord&, const ConvergenceRecord&) = default;
};

/// "p,layers,elements,n_free,iterations,error_energy,flops_factor,
/// flops_iterate_total,flops_total,wall_seconds"
const std::string& records_header();

/// Header line, then one line per record; reals with 17 significant digits.
void write_records(std::ostream& os, const std::vector<ConvergenceRecord>& records);
void emit_records(const std::vector<ConvergenceRecord>& records, const std::filesystem::path& path);

/// Inverse of write_records. Throws Error on malformed input.
std::vector<ConvergenceRecord> parse_records(std::istream& is);
std::vector<ConvergenceRecord> read_records(const std::filesystem::path& path);

/// Formats a double so that parsing it back gives the same bits.
std::string format_real(double x);

}  // namespace hpilg
