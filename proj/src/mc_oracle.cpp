#include "meissner/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "meissner/error.hpp"

namespace meissner {

namespace {

std::uint64_t splitmix(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Vec3 sample_unit_ball(CounterRng& rng) {
  for (;;) {
    const Vec3 p(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0,
                 2.0 * rng.next_double() - 1.0);
    if (p.squaredNorm() <= 1.0) return p;
  }
}

Vec3 sample_direction(CounterRng& rng) {
  for (;;) {
    const Vec3 p = sample_unit_ball(rng);
    const double n = p.norm();
    if (n > 1e-6) return p / n;
  }
}

} // namespace

CounterRng::CounterRng(std::uint64_t key, std::uint64_t index) noexcept
    : state_(splitmix(splitmix(key) ^ splitmix(index ^ 0xD1B54A32D192ED03ULL))) {}

std::uint64_t CounterRng::next_u64() noexcept {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

BallSystem meissner_system(const MeissnerPolyhedron& m) {
  BallSystem sys;
  sys.point_centers = m.vertices().points();
  for (std::size_t i = 0; i < m.pairs().size(); ++i) {
    sys.arc_centers.push_back(m.retained_arc(i));
  }
  sys.edge_curves = sys.arc_centers;
  return sys;
}

BallSystem reuleaux_system(const VertexSet& vs, std::span<const DualEdgePair> pairs) {
  BallSystem sys;
  sys.point_centers = vs.points();
  for (const auto& p : pairs) {
    sys.edge_curves.push_back(p.geometry.arc_e);
    sys.edge_curves.push_back(p.geometry.arc_dual);
  }
  return sys;
}

double max_dist_point_to_arc(const Vec3& p, const Arc& arc) { return arc.max_distance(p); }

bool contains(const BallSystem& system, const Vec3& p, double tol) {
  const double limit = (1.0 + tol) * (1.0 + tol);
  for (const auto& c : system.point_centers) {
    if ((p - c).squaredNorm() > limit) return false;
  }
  for (const auto& arc : system.arc_centers) {
    if (arc.max_distance(p) > 1.0 + tol) return false;
  }
  return true;
}

McResult mc_volume(const BallSystem& system, std::int64_t samples, std::uint64_t seed,
                   unsigned threads) {
  if (system.point_centers.empty() && system.arc_centers.empty()) {
    throw Error(ErrorKind::EmptySystem, "ball system has no centers");
  }
  if (samples < kMinMcSamples) {
    throw Error(ErrorKind::InvalidArgument,
                "at least " + std::to_string(kMinMcSamples) + " samples required");
  }
  const Vec3 origin = system.point_centers.empty() ? system.arc_centers.front().point(0.0)
                                                   : system.point_centers.front();
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, samples));

  std::vector<std::int64_t> hits(threads, 0);
  auto work = [&](unsigned t) {
    const std::int64_t begin = samples * t / threads;
    const std::int64_t end = samples * (t + 1) / threads;
    std::int64_t local = 0;
    for (std::int64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      if (contains(system, origin + sample_unit_ball(rng))) ++local;
    }
    hits[t] = local;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  McResult r;
  r.samples = samples;
  r.seed = seed;
  for (auto h : hits) r.hits += h;
  const double box = 4.0 * std::numbers::pi / 3.0;
  const double p = static_cast<double>(r.hits) / static_cast<double>(samples);
  r.volume_estimate = box * p;
  r.std_error = box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return r;
}

double support(const BallSystem& system, const Vec3& u) {
  constexpr double tol = 1e-9;
  double best = -std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec3& p) {
    const double value = u.dot(p);
    if (value > best && contains(system, p, tol)) best = value;
  };
  for (const auto& c : system.point_centers) {
    consider(c);
    consider(c + u);
  }
  for (const auto& arc : system.arc_centers) consider(arc.argmin_dot(u) + u);
  for (const auto& arc : system.edge_curves) consider(arc.argmax_dot(u));
  if (!std::isfinite(best)) {
    throw Error(ErrorKind::Geometry, "no boundary candidate found for the support function");
  }
  return best;
}

WidthRange width_samples(const BallSystem& system, int directions, std::uint64_t seed) {
  if (directions < 1) throw Error(ErrorKind::InvalidArgument, "need at least one direction");
  WidthRange range{std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < directions; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const Vec3 u = sample_direction(rng);
    const double w = support(system, u) + support(system, -u);
    range.min_width = std::min(range.min_width, w);
    range.max_width = std::max(range.max_width, w);
  }
  return range;
}

} // namespace meissner
