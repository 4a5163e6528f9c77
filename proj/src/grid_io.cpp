#include "carleman/grid_io.hpp"

#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "carleman/error.hpp"

namespace carleman {

namespace {

constexpr char kMagic[8] = {'C', 'R', 'L', 'G', 'R', 'I', 'D', '1'};

struct Raw {
  int n = 0;
  double L = 0;
  std::size_t N = 0;
  bool complex = false;
  std::vector<double> data;  // interleaved for complex
};

std::size_t cells(int n, std::size_t N) {
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= N;
  return total;
}

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double x) {
  const auto v = std::bit_cast<std::uint64_t>(x);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw Error("grid_io", "truncated binary grid header");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw Error("grid_io", "truncated binary grid data");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write(const Raw& raw, const std::filesystem::path& path) {
  const std::size_t count = cells(raw.n, raw.N);
  if (format_for(path) == GridFormat::csv) {
    std::ofstream os(path);
    if (!os) throw Error("grid_io", "cannot open " + path.string() + " for writing");
    os << "# n=" << raw.n << " L=" << fmt(raw.L) << " N=" << raw.N << "\n";
    os << (raw.complex ? "index,re,im\n" : "index,value\n");
    for (std::size_t i = 0; i < count; ++i) {
      os << i;
      if (raw.complex) os << ',' << fmt(raw.data[2 * i]) << ',' << fmt(raw.data[2 * i + 1]) << '\n';
      else os << ',' << fmt(raw.data[i]) << '\n';
    }
    if (!os) throw Error("grid_io", "write failed for " + path.string());
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("grid_io", "cannot open " + path.string() + " for writing");
  os.write(kMagic, 8);
  put_u32(os, static_cast<std::uint32_t>(raw.n));
  put_u32(os, static_cast<std::uint32_t>(raw.N));
  put_f64(os, raw.L);
  put_u32(os, raw.complex ? 1u : 0u);
  put_u32(os, 0u);
  for (double x : raw.data) put_f64(os, x);
  if (!os) throw Error("grid_io", "write failed for " + path.string());
}

Raw read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("grid_io", "cannot open " + path.string());
  Raw raw;
  std::string line;
  if (!std::getline(is, line)) throw Error("grid_io", "empty grid file");
  {
    long long n = 0, N = 0;
    double L = 0;
    if (std::sscanf(line.c_str(), "# n=%lld L=%lf N=%lld", &n, &L, &N) != 3)
      throw Error("grid_io", "bad CSV grid header: " + line);
    if (n < 1 || n > 3 || N < 1 || !(L > 0)) throw Error("grid_io", "bad CSV grid header values");
    raw.n = static_cast<int>(n);
    raw.N = static_cast<std::size_t>(N);
    raw.L = L;
  }
  if (!std::getline(is, line)) throw Error("grid_io", "missing CSV column header");
  if (line == "index,re,im") raw.complex = true;
  else if (line != "index,value") throw Error("grid_io", "unknown CSV column header: " + line);

  const std::size_t count = cells(raw.n, raw.N);
  const std::size_t width = raw.complex ? 2 : 1;
  raw.data.assign(count * width, 0.0);
  std::vector<bool> seen(count, false);
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != width + 1) throw Error("grid_io", "bad CSV row: " + line);
    std::size_t idx = 0;
    try {
      idx = std::stoull(fields[0]);
    } catch (const std::exception&) {
      throw Error("grid_io", "bad CSV row: " + line);
    }
    if (idx >= count || seen[idx]) throw Error("grid_io", "CSV index out of range or repeated: " + line);
    seen[idx] = true;
    for (std::size_t k = 0; k < width; ++k) {
      try {
        raw.data[idx * width + k] = std::stod(fields[k + 1]);
      } catch (const std::exception&) {
        throw Error("grid_io", "bad CSV value: " + line);
      }
    }
    ++rows;
  }
  if (rows != count) throw Error("grid_io", "CSV grid has " + std::to_string(rows) + " rows, expected " +
                                                std::to_string(count));
  return raw;
}

Raw read_binary(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("grid_io", "cannot open " + path.string());
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) throw Error("grid_io", "not a binary grid file");
  Raw raw;
  const std::uint32_t n = get_u32(is);
  const std::uint32_t N = get_u32(is);
  raw.L = get_f64(is);
  const std::uint32_t kind = get_u32(is);
  (void)get_u32(is);
  if (n < 1 || n > 3 || N < 1 || !(raw.L > 0) || kind > 1) throw Error("grid_io", "bad binary grid header");
  raw.n = static_cast<int>(n);
  raw.N = N;
  raw.complex = kind == 1;
  const std::size_t count = cells(raw.n, raw.N) * (raw.complex ? 2 : 1);
  raw.data.resize(count);
  for (double& x : raw.data) x = get_f64(is);
  if (is.peek() != std::char_traits<char>::eof()) throw Error("grid_io", "trailing bytes in binary grid file");
  return raw;
}

Raw read(const std::filesystem::path& path) {
  return format_for(path) == GridFormat::csv ? read_csv(path) : read_binary(path);
}

}  // namespace

GridFormat format_for(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? GridFormat::csv : GridFormat::binary;
}

void save_grid_weight(const GridWeight& w, const std::filesystem::path& path) {
  Raw raw{w.dimension(), w.half_width(), w.samples_per_axis(), false,
          std::vector<double>(w.values().begin(), w.values().end())};
  write(raw, path);
}

GridWeight load_grid_weight(const std::filesystem::path& path) {
  Raw raw = read(path);
  if (raw.complex) throw Error("grid_io", "expected a real-valued grid");
  return GridWeight(raw.n, raw.L, raw.N, std::move(raw.data));
}

void save_grid_function(const GridFunction& f, const std::filesystem::path& path) {
  if (f.domain() != Domain::space) throw Error("grid_io", "only spatial grid functions can be saved");
  const GridGeometry& g = f.geometry();
  const double L = g.half_width();
  if (std::abs(g.origin - (-L + 0.5 * g.spacing)) > 1e-12 * L)
    throw Error("grid_io", "grid function is not on a centred box grid");
  Raw raw{g.n, L, g.N, true, {}};
  raw.data.reserve(2 * f.size());
  for (const cplx& z : f.values()) {
    raw.data.push_back(z.real());
    raw.data.push_back(z.imag());
  }
  write(raw, path);
}

GridFunction load_grid_function(const std::filesystem::path& path) {
  Raw raw = read(path);
  const GridGeometry g = GridGeometry::box(raw.n, raw.L, raw.N);
  std::vector<cplx> values(g.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = raw.complex ? cplx(raw.data[2 * i], raw.data[2 * i + 1]) : cplx(raw.data[i], 0.0);
  return GridFunction(g, std::move(values));
}

}  // namespace carleman
