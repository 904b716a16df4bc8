#include "sfide/noise.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

#include "sfide/errors.hpp"

namespace sfide {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

double polynomial(const double* c, int n, double x) {
  double acc = c[n - 1];
  for (int i = n - 2; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

static_assert(std::endian::native == std::endian::little, "binary increment dump assumes little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw ArgumentError("read_increments: truncated stream");
  return value;
}

constexpr std::uint32_t kDumpMagic = 0x57424653u;  // "SFBW"

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kPhiloxW0;
      k[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c[0], hi0, lo0);
    mulhilo(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

double normal_quantile(double p) {
  static constexpr double a[8] = {3.3871328727963666080e0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
                                  1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                  3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[8] = {1.0,
                                  4.2313330701600911252e+1,
                                  6.8718700749205790830e+2,
                                  5.3941960214247511077e+3,
                                  2.1213794301586595867e+4,
                                  3.9307895800092710610e+4,
                                  2.8729085735721942674e+4,
                                  5.2264952788528545610e+3};
  static constexpr double c[8] = {1.42343711074968357734e0,   4.63033784615654529590e0,   5.76949722146069140550e0,
                                  3.64784832476320460504e0,   1.27045825245236838258e0,   2.41780725177450611770e-1,
                                  2.27238449892691845833e-2,  7.74545014278341407640e-4};
  static constexpr double d[8] = {1.0,
                                  2.05319162663775882187e0,
                                  1.67638483018380384940e0,
                                  6.89767334985100004550e-1,
                                  1.48103976427480074590e-1,
                                  1.51986665636164571966e-2,
                                  5.47593808499534494600e-4,
                                  1.05075007164441684324e-9};
  static constexpr double e[8] = {6.65790464350110377720e0,   5.46378491116411436990e0,   1.78482653991729133580e0,
                                  2.96560571828504891230e-1,  2.65321895265761230930e-2,  1.24266094738807843860e-3,
                                  2.71155556874348757815e-5,  2.01033439929228813265e-7};
  static constexpr double f[8] = {1.0,
                                  5.99832206555887937690e-1,
                                  1.36929880922735805310e-1,
                                  1.48753612908506148525e-2,
                                  7.86869131145613259100e-4,
                                  1.84631831751005468180e-5,
                                  1.42151175831644588870e-7,
                                  2.04426310338993978564e-15};

  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * polynomial(a, 8, r) / polynomial(b, 8, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = polynomial(c, 8, r) / polynomial(d, 8, r);
  } else {
    r -= 5.0;
    x = polynomial(e, 8, r) / polynomial(f, 8, r);
  }
  return q < 0.0 ? -x : x;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

void RandomStream::refill() noexcept {
  buffer_ = philox4x32_10({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                           static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                          key_);
  ++block_;
  used_ = 0;
}

double RandomStream::uniform() noexcept {
  if (used_ == 2) refill();
  const std::uint64_t bits = (static_cast<std::uint64_t>(buffer_[2 * used_ + 1]) << 32) | buffer_[2 * used_];
  ++used_;
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

BrownianPaths generate(std::uint64_t seed, std::uint64_t path_index, std::size_t n_steps, std::size_t r, double h) {
  if (n_steps == 0) throw ArgumentError("generate: n_steps must be >= 1");
  if (r == 0) throw ArgumentError("generate: r must be >= 1");
  if (!(h > 0.0) || !std::isfinite(h)) throw ArgumentError("generate: h must be positive and finite");

  BrownianPaths paths;
  paths.seed = seed;
  paths.path_index = path_index;
  paths.n_steps = n_steps;
  paths.r = r;
  paths.h = h;
  paths.increments.resize(n_steps * r);
  const double scale = std::sqrt(h);
  RandomStream stream(seed, path_index);
  for (double& x : paths.increments) x = scale * stream.normal();
  return paths;
}

BrownianPaths coarsen(const BrownianPaths& fine) {
  if (fine.n_steps % 2 != 0) throw ArgumentError("coarsen: n_steps must be even");
  BrownianPaths coarse;
  coarse.seed = fine.seed;
  coarse.path_index = fine.path_index;
  coarse.coarsen_level = fine.coarsen_level + 1;
  coarse.n_steps = fine.n_steps / 2;
  coarse.r = fine.r;
  coarse.h = 2.0 * fine.h;
  coarse.increments.resize(coarse.n_steps * coarse.r);
  for (std::size_t j = 0; j < coarse.n_steps; ++j) {
    for (std::size_t k = 0; k < coarse.r; ++k) {
      coarse.increments[j * coarse.r + k] =
          fine.increments[(2 * j) * fine.r + k] + fine.increments[(2 * j + 1) * fine.r + k];
    }
  }
  return coarse;
}

void write_increments(std::ostream& out, const BrownianPaths& paths) {
  constexpr auto u32max = std::numeric_limits<std::uint32_t>::max();
  if (paths.n_steps > u32max || paths.r > u32max || paths.path_index > u32max) {
    throw ArgumentError("write_increments: dimensions exceed the 32-bit header fields");
  }
  put(out, kDumpMagic);
  put(out, static_cast<std::uint32_t>(paths.n_steps));
  put(out, static_cast<std::uint32_t>(paths.r));
  put(out, static_cast<std::uint32_t>(paths.path_index));
  put(out, paths.h);
  put(out, paths.seed);
  out.write(reinterpret_cast<const char*>(paths.increments.data()),
            static_cast<std::streamsize>(paths.increments.size() * sizeof(double)));
}

BrownianPaths read_increments(std::istream& in) {
  if (get<std::uint32_t>(in) != kDumpMagic) throw ArgumentError("read_increments: bad magic");
  BrownianPaths paths;
  paths.n_steps = get<std::uint32_t>(in);
  paths.r = get<std::uint32_t>(in);
  paths.path_index = get<std::uint32_t>(in);
  paths.h = get<double>(in);
  paths.seed = get<std::uint64_t>(in);
  paths.increments.resize(paths.n_steps * paths.r);
  in.read(reinterpret_cast<char*>(paths.increments.data()),
          static_cast<std::streamsize>(paths.increments.size() * sizeof(double)));
  if (!in) throw ArgumentError("read_increments: truncated payload");
  return paths;
}

}  // namespace sfide
