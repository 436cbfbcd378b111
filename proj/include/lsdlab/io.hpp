// CSV output with a reproducibility header. Floats are printed as
// shortest-round-trip decimals so identical runs produce identical bytes and
// re-parsing is lossless.
#pragma once

#include <charconv>
#include <ostream>

#include "lsdlab/config.hpp"

namespace lsd {

inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

inline std::string format_u64(std::uint64_t v) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

// The metadata block: every RunConfig field, verbatim.
inline void write_config_echo(std::ostream& os, const RunConfig& cfg, const std::string& command) {
  os << "# lsdlab " << command << "\n";
  os << "# function.name = " << cfg.name << "\n";
  os << "# function.preset = " << cfg.preset << "\n";
  os << "# function.alpha_re = " << format_double(cfg.alpha_re) << "\n";
  os << "# function.alpha_im = " << format_double(cfg.alpha_im) << "\n";
  os << "# function.big_a = " << format_double(cfg.big_a) << "\n";
  os << "# function.k = " << format_double(cfg.k) << "\n";
  os << "# function.eps = " << format_double(cfg.eps) << "\n";
  os << "# grid.start = " << format_u64(cfg.grid_start) << "\n";
  os << "# grid.ratio = " << format_double(cfg.grid_ratio) << "\n";
  os << "# grid.count = " << cfg.grid_count << "\n";
  os << "# expansion.order_j = " << cfg.order_j << "\n";
  os << "# expansion.prime_cutoff = " << format_u64(cfg.prime_cutoff) << "\n";
  os << "# output.path = " << cfg.out_path << "\n";
  os << "# output.seed = " << format_u64(cfg.seed) << "\n";
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
    os_ << "\n";
  }

  CsvWriter& field(std::uint64_t v) { return raw(format_u64(v)); }
  CsvWriter& field(double v) { return raw(format_double(v)); }
  CsvWriter& field(Complex v) { return field(v.real()).field(v.imag()); }

  void end_row() {
    os_ << "\n";
    first_ = true;
  }

 private:
  CsvWriter& raw(const std::string& s) {
    if (!first_) os_ << ",";
    os_ << s;
    first_ = false;
    return *this;
  }

  std::ostream& os_;
  bool first_ = true;
};

}  // namespace lsd
