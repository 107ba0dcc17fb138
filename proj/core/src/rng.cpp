#include "rlan/rng.hpp"

#include <boost/random/normal_distribution.hpp>

namespace rlan {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

StreamKey StreamKey::child(std::uint64_t tag) const {
  return StreamKey(mix64(value_ ^ mix64(tag + 0x632be59bd9b4e019ULL)) +
                   0x9e3779b97f4a7c15ULL);
}

StreamKey StreamKey::child(std::string_view tag) const {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return child(h);
}

double CounterRng::normal() {
  return boost::random::normal_distribution<double>()(*this);
}

void CounterRng::fill_normal(std::span<double> out) {
  boost::random::normal_distribution<double> dist;
  for (double& z : out) z = dist(*this);
}

}  // namespace rlan
