#include "ncips/poly.hpp"

namespace ncips {

namespace {
std::atomic<std::size_t> g_term_cap{kDefaultTermCap};
}

std::size_t term_cap() { return g_term_cap.load(std::memory_order_relaxed); }

void set_term_cap(std::size_t cap) { g_term_cap.store(cap, std::memory_order_relaxed); }

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (Var v : w) out += var_name(v);
  return out;
}

}  // namespace ncips
