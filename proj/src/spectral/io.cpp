#include "relaxlab/spectral/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace relaxlab::spectral {

static_assert(std::endian::native == std::endian::little, "field container assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'R', 'L', 'X', 'F'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("truncated field container");
  return value;
}

}  // namespace

void write_field(std::ostream& out, const SpectralField& field) {
  const Grid& g = field.grid();
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(field.components()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.points_per_axis()));
  put<double>(out, g.length());
  const std::string layout = kFieldLayout;
  put<std::uint32_t>(out, static_cast<std::uint32_t>(layout.size()));
  out.write(layout.data(), static_cast<std::streamsize>(layout.size()));
  const auto coeffs = field.coeffs();
  out.write(reinterpret_cast<const char*>(coeffs.data()),
            static_cast<std::streamsize>(coeffs.size() * sizeof(Complex)));
  if (!out) throw std::runtime_error("failed to write field container");
}

SpectralField read_field(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("not a field container");
  if (get<std::uint32_t>(in) != kVersion) throw std::runtime_error("unsupported field container version");
  const auto d = get<std::uint32_t>(in);
  const auto n = get<std::uint32_t>(in);
  const auto N = get<std::uint32_t>(in);
  const auto L = get<double>(in);
  const auto len = get<std::uint32_t>(in);
  if (len > 256) throw std::runtime_error("corrupt layout tag");
  std::string layout(len, '\0');
  in.read(layout.data(), len);
  if (layout != kFieldLayout) throw std::runtime_error("unknown coefficient layout '" + layout + "'");
  SpectralField field(Grid(static_cast<int>(d), static_cast<int>(N), L), static_cast<int>(n));
  auto coeffs = field.coeffs();
  in.read(reinterpret_cast<char*>(coeffs.data()), static_cast<std::streamsize>(coeffs.size() * sizeof(Complex)));
  if (!in) throw std::runtime_error("truncated field container");
  return field;
}

void save_field(const std::string& path, const SpectralField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_field(out, field);
}

SpectralField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_field(in);
}

void write_block_norms_csv(std::ostream& out, std::span<const double> block_values, int j_min) {
  out << "j,two_pow_j_physical,norm\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < block_values.size(); ++i) {
    const int j = j_min + static_cast<int>(i);
    out << j << ',' << std::ldexp(1.0, j) << ',' << block_values[i] << '\n';
  }
}

}  // namespace relaxlab::spectral
