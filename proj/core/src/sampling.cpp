#include "tubal/sampling.hpp"

#include <algorithm>
#include <string>

#include "tubal/algebra.hpp"

namespace tubal {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace

std::mt19937_64 RngSeed::engine() const { return std::mt19937_64(splitmix64(seed ^ fnv1a(label))); }

RngSeed RngSeed::derive(std::string_view sub) const
{
  std::string next = label;
  next += '/';
  next += sub;
  return RngSeed{seed, std::move(next)};
}

RngSeed RngSeed::derive(std::uint64_t sub) const { return derive(std::to_string(sub)); }

SampleSet::SampleSet(Dims dims, std::vector<Index> linear)
  : dims_{dims}
  , linear_{std::move(linear)}
{
  std::sort(linear_.begin(), linear_.end());
  if (!linear_.empty() && (linear_.front() < 0 || linear_.back() >= dims.count())) {
    throw Error(ErrorCode::IndexOutOfRange, "sample index outside " + to_string(dims));
  }
  if (std::adjacent_find(linear_.begin(), linear_.end()) != linear_.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate sample in observation set");
  }
}

SampleSet SampleSet::full(Dims dims)
{
  std::vector<Index> all(static_cast<std::size_t>(dims.count()));
  for (Index p = 0; p < dims.count(); ++p) {
    all[static_cast<std::size_t>(p)] = p;
  }
  return SampleSet(dims, std::move(all));
}

SampleSet SampleSet::from_triples(Dims dims, std::span<const Triple> triples)
{
  std::vector<Index> linear;
  linear.reserve(triples.size());
  for (auto const& [i, j, kappa] : triples) {
    if (i < 0 || i >= dims.m || j < 0 || j >= dims.n || kappa < 0 || kappa >= dims.k) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "triple (" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(kappa) + ") outside "
                    + to_string(dims));
    }
    linear.push_back(i + dims.m * (j + dims.n * kappa));
  }
  return SampleSet(dims, std::move(linear));
}

bool SampleSet::contains(Index i, Index j, Index kappa) const
{
  return std::binary_search(linear_.begin(), linear_.end(), i + dims_.m * (j + dims_.n * kappa));
}

std::vector<Triple> SampleSet::triples() const
{
  std::vector<Triple> out;
  out.reserve(linear_.size());
  Index const slice = dims_.slice_size();
  for (Index p : linear_) {
    Index const kappa = p / slice;
    Index const rest = p % slice;
    out.push_back({rest % dims_.m, rest / dims_.m, kappa});
  }
  return out;
}

DenseTensor3 SampleSet::mask() const
{
  DenseTensor3 out(dims_);
  for (Index p : linear_) {
    out.data()[p] = 1.0;
  }
  return out;
}

SampleSet SampleSet::tube_transposed() const
{
  Dims const d{dims_.n, dims_.m, dims_.k};
  std::vector<Index> out;
  out.reserve(linear_.size());
  for (auto const& [i, j, kappa] : triples()) {
    out.push_back(j + d.m * (i + d.n * kappa));
  }
  return SampleSet(d, std::move(out));
}

SampleSet SampleSet::ttransposed() const
{
  Dims const d{dims_.n, dims_.m, dims_.k};
  std::vector<Index> out;
  out.reserve(linear_.size());
  for (auto const& [i, j, kappa] : triples()) {
    Index const flipped = kappa == 0 ? 0 : d.k - kappa;
    out.push_back(j + d.m * (i + d.n * flipped));
  }
  return SampleSet(d, std::move(out));
}

SampleSet sample_bernoulli(Dims dims, double p, const RngSeed& seed)
{
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "sampling probability must lie in [0, 1]");
  }
  auto engine = seed.engine();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Index> kept;
  kept.reserve(static_cast<std::size_t>(static_cast<double>(dims.count()) * p) + 16);
  for (Index q = 0; q < dims.count(); ++q) {
    if (unit(engine) < p) {
      kept.push_back(q);
    }
  }
  return SampleSet(dims, std::move(kept));
}

DenseTensor3 project(const DenseTensor3& t, const SampleSet& omega)
{
  if (!(t.dims() == omega.dims())) {
    throw Error(ErrorCode::DimensionMismatch, "project " + to_string(t.dims()) + " onto " + to_string(omega.dims()));
  }
  DenseTensor3 out(t.dims());
  for (Index p : omega.linear()) {
    out.data()[p] = t.data()[p];
  }
  return out;
}

std::vector<SampleSet> split(const SampleSet& omega, Index parts, const RngSeed& seed)
{
  if (parts < 1) {
    throw Error(ErrorCode::InvalidArgument, "split needs at least one part");
  }
  auto engine = seed.engine();
  std::uniform_int_distribution<Index> pick(0, parts - 1);
  std::vector<std::vector<Index>> buckets(static_cast<std::size_t>(parts));
  for (Index p : omega.linear()) {
    buckets[static_cast<std::size_t>(pick(engine))].push_back(p);
  }
  std::vector<SampleSet> out;
  out.reserve(buckets.size());
  for (auto& bucket : buckets) {
    out.emplace_back(omega.dims(), std::move(bucket));
  }
  return out;
}

DenseTensor3 gaussian_tensor(Dims dims, std::mt19937_64& engine)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseTensor3 out(dims);
  for (double& v : out.values()) {
    v = normal(engine);
  }
  return out;
}

SyntheticInstance synth_low_tubal_rank(Dims dims, Index r, const RngSeed& seed)
{
  if (r < 1 || r > std::min(dims.m, dims.n)) {
    throw Error(ErrorCode::RankOutOfRange, "rank " + std::to_string(r) + " invalid for " + to_string(dims));
  }
  auto engine = seed.engine();
  DenseTensor3 x = gaussian_tensor({dims.m, r, dims.k}, engine);
  DenseTensor3 y = gaussian_tensor({r, dims.n, dims.k}, engine);
  DenseTensor3 t = tprod(x, y);
  return SyntheticInstance{std::move(t), std::move(x), std::move(y)};
}

} // namespace tubal
