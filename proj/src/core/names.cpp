#include <atomic>
#include <cctype>

#include "mqc/core.hpp"

namespace mqc {

namespace {

std::atomic<unsigned long> g_fresh_counter{0};

std::string_view strip_suffix(std::string_view base) {
  // "a_12" and "k''" both come from an earlier freshening of "a" / "k".
  while (!base.empty() && base.back() == '\'') base.remove_suffix(1);
  auto pos = base.find_last_of('_');
  if (pos != std::string_view::npos && pos + 1 < base.size() && pos > 0) {
    bool digits = true;
    for (auto c : base.substr(pos + 1)) digits = digits && std::isdigit(static_cast<unsigned char>(c));
    if (digits) base = base.substr(0, pos);
  }
  return base.empty() ? std::string_view("v") : base;
}

}  // namespace

std::string fresh_name(std::string_view base, const NameSet& avoid) {
  auto stem = std::string(strip_suffix(base));
  for (;;) {
    auto n = g_fresh_counter.fetch_add(1, std::memory_order_relaxed) + 1;
    auto name = stem + "_" + std::to_string(n);
    if (!avoid.count(name)) return name;
  }
}

std::string pick_name(std::string_view base, const NameSet& avoid) {
  std::string name(base);
  for (int primes = 0; primes < 3; ++primes) {
    if (!avoid.count(name)) return name;
    name += '\'';
  }
  return fresh_name(base, avoid);
}

}  // namespace mqc
