#include "tubal/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace tubal {

namespace {

constexpr std::array<char, 4> kMagic{'T', '3', 'B', '1'};
constexpr std::size_t kHeaderBytes = 16;

std::string describe(const std::filesystem::path& path) { return "'" + path.string() + "'"; }

void put_u32(std::vector<unsigned char>& out, std::uint32_t v)
{
  for (int b = 0; b < 4; ++b) {
    out.push_back(static_cast<unsigned char>((v >> (8 * b)) & 0xffU));
  }
}

std::uint32_t get_u32(const unsigned char* p)
{
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) {
    v |= static_cast<std::uint32_t>(p[b]) << (8 * b);
  }
  return v;
}

void put_f64(std::vector<unsigned char>& out, double value)
{
  auto const bits = std::bit_cast<std::uint64_t>(value);
  for (int b = 0; b < 8; ++b) {
    out.push_back(static_cast<unsigned char>((bits >> (8 * b)) & 0xffU));
  }
}

double get_f64(const unsigned char* p)
{
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) {
    bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  }
  return std::bit_cast<double>(bits);
}

std::vector<unsigned char> slurp(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + describe(path));
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorCode::IoError, "cannot read " + describe(path));
  }
  return bytes;
}

} // namespace

DenseTensor3 read_tensor(const std::filesystem::path& path)
{
  auto const bytes = slurp(path);
  if (bytes.size() < kMagic.size() || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw Error(ErrorCode::BadMagic, describe(path) + " is not a T3B file");
  }
  if (bytes.size() < kHeaderBytes) {
    throw Error(ErrorCode::TruncatedFile, describe(path) + " ends inside the header");
  }
  std::uint64_t const m = get_u32(bytes.data() + 4);
  std::uint64_t const n = get_u32(bytes.data() + 8);
  std::uint64_t const k = get_u32(bytes.data() + 12);
  if (m == 0 || n == 0 || k == 0) {
    throw Error(ErrorCode::DimOverflow, describe(path) + " declares a zero dimension");
  }
  // Each dim is below 2^32, so m * n cannot wrap.
  std::uint64_t const limit = static_cast<std::uint64_t>(std::numeric_limits<Index>::max()) / 8;
  if (m * n > limit / k) {
    throw Error(ErrorCode::DimOverflow, describe(path) + " declares too many values");
  }
  std::uint64_t const count = m * n * k;
  if (bytes.size() != kHeaderBytes + 8 * count) {
    throw Error(ErrorCode::TruncatedFile, describe(path) + " holds " + std::to_string(bytes.size() - kHeaderBytes)
                                            + " payload bytes, expected " + std::to_string(8 * count));
  }
  std::vector<double> values(count);
  for (std::uint64_t p = 0; p < count; ++p) {
    values[p] = get_f64(bytes.data() + kHeaderBytes + 8 * p);
  }
  return DenseTensor3(Dims{static_cast<Index>(m), static_cast<Index>(n), static_cast<Index>(k)}, std::move(values));
}

void write_tensor(const std::filesystem::path& path, const DenseTensor3& t)
{
  constexpr auto kMax = static_cast<Index>(std::numeric_limits<std::uint32_t>::max());
  if (t.rows() > kMax || t.cols() > kMax || t.depth() > kMax) {
    throw Error(ErrorCode::DimOverflow, to_string(t.dims()) + " does not fit the T3B header");
  }
  std::vector<unsigned char> bytes(kMagic.begin(), kMagic.end());
  bytes.reserve(kHeaderBytes + 8 * static_cast<std::size_t>(t.size()));
  put_u32(bytes, static_cast<std::uint32_t>(t.rows()));
  put_u32(bytes, static_cast<std::uint32_t>(t.cols()));
  put_u32(bytes, static_cast<std::uint32_t>(t.depth()));
  for (double v : t.values()) {
    put_f64(bytes, v);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + describe(path));
  }
}

SampleSet read_sample_set(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + describe(path));
  }
  std::string line;
  Dims dims;
  if (!std::getline(in, line) || !(std::istringstream(line) >> dims.m >> dims.n >> dims.k)) {
    throw Error(ErrorCode::TruncatedFile, describe(path) + " lacks the 'm n k' header");
  }
  if (dims.m < 1 || dims.n < 1 || dims.k < 1) {
    throw Error(ErrorCode::DimOverflow, describe(path) + " declares a non-positive dimension");
  }
  std::vector<Triple> triples;
  Index number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream fields(line);
    Triple t{};
    if (!(fields >> t[0] >> t[1] >> t[2])) {
      throw Error(ErrorCode::IoError, describe(path) + " line " + std::to_string(number) + " is not an 'i j k' triple",
                  number);
    }
    triples.push_back({t[0] - 1, t[1] - 1, t[2] - 1});
  }
  return SampleSet::from_triples(dims, triples);
}

void write_sample_set(const std::filesystem::path& path, const SampleSet& omega)
{
  std::ofstream out(path, std::ios::trunc);
  auto const& d = omega.dims();
  out << d.m << ' ' << d.n << ' ' << d.k << '\n';
  for (auto const& [i, j, kappa] : omega.triples()) {
    out << i + 1 << ' ' << j + 1 << ' ' << kappa + 1 << '\n';
  }
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + describe(path));
  }
}

} // namespace tubal
