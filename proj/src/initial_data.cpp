#include "nlslab/initial_data.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace nlslab {
namespace {

static_assert(std::endian::native == std::endian::little,
              "sample file I/O assumes a little-endian host");

constexpr char kMagic[4] = {'N', 'L', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;

struct Header {
  char magic[4];
  std::uint32_t version;
  std::uint32_t n;
  std::uint32_t points;
  double length;
  std::uint64_t reserved;
};
static_assert(sizeof(Header) == 32);

}  // namespace

ComplexField make_initial_data(const InitialDataSpec& spec, const Grid& grid) {
  if (spec.profile == Profile::sample_file) {
    ComplexField f = read_sample_file(spec.sample_file);
    if (!(f.grid() == grid))
      throw DataError("sample file grid does not match the configured grid: " + spec.sample_file);
    return f;
  }
  if (!(spec.width > 0.0)) throw DataError("initial width must be positive");

  const int n = grid.dim();
  std::vector<double> x0(n, 0.0);
  if (!spec.offset.empty()) {
    if (static_cast<int>(spec.offset.size()) != n) throw DataError("offset dimension mismatch");
    x0 = spec.offset;
  }
  const auto coords = grid.axis_coords();
  const double inv2s2 = 1.0 / (2.0 * spec.width * spec.width);
  const double b = spec.profile == Profile::gaussian ? 0.0 : spec.chirp;

  ComplexField u(grid);
  for (std::size_t i = 0; i < u.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double d = coords[grid.axis_index(i, a)] - x0[a];
      r2 += d * d;
    }
    double envelope = 0.0;
    if (spec.profile == Profile::ring) {
      const double d = std::sqrt(r2) - spec.ring_radius;
      envelope = std::exp(-d * d * inv2s2);
    } else {
      envelope = std::exp(-r2 * inv2s2);
    }
    u[i] = spec.amplitude * envelope * std::polar(1.0, b * r2);
  }
  return u;
}

ComplexField read_sample_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open sample file: " + path);
  Header h{};
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in || std::memcmp(h.magic, kMagic, 4) != 0)
    throw DataError("not an NLSF sample file: " + path);
  if (h.version != kVersion)
    throw DataError("unsupported NLSF version " + std::to_string(h.version) + ": " + path);
  Grid grid(static_cast<int>(h.n), h.points, h.length);
  ComplexField f(grid);
  in.read(reinterpret_cast<char*>(f.data()),
          static_cast<std::streamsize>(f.size() * sizeof(cplx)));
  if (!in) throw DataError("truncated NLSF sample file: " + path);
  if (in.peek() != std::char_traits<char>::eof())
    throw DataError("trailing bytes after NLSF payload: " + path);
  f.require_finite("sample file");
  return f;
}

void write_sample_file(const std::string& path, const ComplexField& field) {
  const Grid& g = field.grid();
  Header h{};
  std::memcpy(h.magic, kMagic, 4);
  h.version = kVersion;
  h.n = static_cast<std::uint32_t>(g.dim());
  h.points = static_cast<std::uint32_t>(g.points_per_axis());
  h.length = g.length();
  h.reserved = 0;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write sample file: " + path);
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  out.write(reinterpret_cast<const char*>(field.data()),
            static_cast<std::streamsize>(field.size() * sizeof(cplx)));
  if (!out) throw Error("write failed: " + path);
}

}  // namespace nlslab
