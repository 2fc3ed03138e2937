#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <string>

#include "thoma/diffusion_sim/dynamics.hpp"

namespace thoma {

/// CSV column header: path_id,t,x_-m,...,x_-1,x_1,...,x_n,sum_x
inline std::string trajectory_csv_header(Truncation t) {
  std::string h = "path_id,t";
  for (int i : t.indices()) h += ",x_" + std::to_string(i);
  return h + ",sum_x";
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv_frame(std::ostream& os, std::size_t path, double t, const SimState& st) {
  os << path << ',' << format_double(t);
  for (double v : st.x) os << ',' << format_double(v);
  os << ',' << format_double(st.sum()) << '\n';
}

inline constexpr char kBinaryMagic[6] = {'T', 'H', 'S', 'I', 'M', '1'};

namespace detail {

inline void put_le64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(b, 8);
}
inline void put_f64(std::ostream& os, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, sizeof u);
  put_le64(os, u);
}

}  // namespace detail

/// Binary header: magic "THSIM1", n and m as little-endian uint64, then the byte
/// length of a JSON metadata block (uint64) followed by the block itself.
inline void write_binary_header(std::ostream& os, Truncation t, const std::string& meta = {}) {
  os.write(kBinaryMagic, sizeof kBinaryMagic);
  detail::put_le64(os, static_cast<std::uint64_t>(t.n));
  detail::put_le64(os, static_cast<std::uint64_t>(t.m));
  detail::put_le64(os, static_cast<std::uint64_t>(meta.size()));
  os.write(meta.data(), static_cast<std::streamsize>(meta.size()));
}

/// Binary frame: path id, t, coordinates, sum, all little-endian float64.
inline void write_binary_frame(std::ostream& os, std::size_t path, double t, const SimState& st) {
  detail::put_f64(os, static_cast<double>(path));
  detail::put_f64(os, t);
  for (double v : st.x) detail::put_f64(os, v);
  detail::put_f64(os, st.sum());
}

}  // namespace thoma
