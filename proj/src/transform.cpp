#include "ncips/transform.hpp"

namespace ncips {

std::vector<std::vector<std::uint32_t>> monotone_family(std::uint32_t r, std::uint32_t s) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(r + 1);
  std::function<void(std::uint32_t, std::uint32_t)> go = [&](std::uint32_t pos, std::uint32_t bound) {
    if (pos > r) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = 0; v <= bound; ++v) {
      cur[pos] = v;
      go(pos + 1, v);
    }
  };
  go(0, s);
  return out;
}

std::uint64_t monotone_family_size(std::uint32_t r, std::uint32_t s) {
  // C(r+s+1, s) computed incrementally; exact while it fits in 64 bits.
  std::uint64_t c = 1;
  for (std::uint64_t k = 1; k <= s; ++k) c = c * (r + 1 + k) / k;
  return c;
}

}  // namespace ncips
