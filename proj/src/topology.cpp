/*
 * Copyright 2026 The noc-pareto Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "nocpareto/topology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "nocpareto/error.hpp"

namespace nocpareto {

namespace {

void require_router_count(int n) {
  if (n < 2) {
    throw Error(ErrorKind::kDomain,
                fmt::format("router count must be >= 2, got {}", n));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Largest n with n(n-1)/2 == p, or -1.
int routers_for_link_count(std::size_t p) {
  const auto guess = static_cast<int>(std::lround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(p))) / 2.0));
  for (int n = std::max(2, guess - 1); n <= guess + 1; ++n) {
    if (num_links(n) == p) return n;
  }
  return -1;
}

}  // namespace

std::size_t num_links(int n) {
  require_router_count(n);
  const auto un = static_cast<std::size_t>(n);
  return un * (un - 1) / 2;
}

boost::multiprecision::cpp_int combination_count(int n) {
  boost::multiprecision::cpp_int result = 1;
  result <<= num_links(n);
  return result;
}

LinkIndex link_index(RouterId i, RouterId j, int n) {
  if (i < 0 || j < 0 || i >= n || j >= n || i >= j) {
    throw Error(ErrorKind::kInvalidPair,
                fmt::format("invalid router pair ({}, {}) for n={}", i, j, n));
  }
  // Pairs before row i: sum_{r<i} (n-1-r).
  const auto ui = static_cast<std::size_t>(i);
  const auto un = static_cast<std::size_t>(n);
  return ui * (2 * un - ui - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

std::pair<RouterId, RouterId> link_endpoints(LinkIndex k, int n) {
  if (k >= num_links(n)) {
    throw Error(ErrorKind::kIndex,
                fmt::format("link index {} out of range for n={}", k, n));
  }
  RouterId i = 0;
  auto row = static_cast<std::size_t>(n - 1);
  while (k >= row) {
    k -= row;
    --row;
    ++i;
  }
  return {i, i + 1 + static_cast<RouterId>(k)};
}

LinkAllocation::LinkAllocation(int n_routers)
    : n_(n_routers), bits_(num_links(n_routers), 0) {}

LinkAllocation::LinkAllocation(int n_routers, std::vector<std::uint8_t> bits)
    : n_(n_routers), bits_(std::move(bits)) {
  if (bits_.size() != num_links(n_)) {
    throw Error(ErrorKind::kParse,
                fmt::format("allocation for n={} needs {} bits, got {}", n_,
                            num_links(n_), bits_.size()));
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

LinkAllocation LinkAllocation::parse(std::string_view text) {
  if (text.starts_with("n=")) return from_hex(text);
  return from_bit_string(text);
}

LinkAllocation LinkAllocation::from_bit_string(std::string_view bits) {
  const int n = routers_for_link_count(bits.size());
  if (n < 2) {
    throw Error(ErrorKind::kParse,
                fmt::format("allocation length {} is not n(n-1)/2 for any n >= 2",
                            bits.size()));
  }
  std::vector<std::uint8_t> out(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != '0' && bits[k] != '1') {
      throw Error(ErrorKind::kParse,
                  fmt::format("allocation character {} is '{}', expected 0/1",
                              k, bits[k]));
    }
    out[k] = bits[k] == '1';
  }
  return LinkAllocation(n, std::move(out));
}

LinkAllocation LinkAllocation::from_hex(std::string_view text) {
  // n=<n>;bits=<hex>
  const auto semi = text.find(';');
  if (!text.starts_with("n=") || semi == std::string_view::npos ||
      text.substr(semi + 1, 5) != "bits=") {
    throw Error(ErrorKind::kParse,
                fmt::format("expected n=<n>;bits=<hex>, got '{}'", text));
  }
  int n = 0;
  const auto n_text = text.substr(2, semi - 2);
  auto [ptr, ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
  if (ec != std::errc{} || ptr != n_text.data() + n_text.size() || n < 2) {
    throw Error(ErrorKind::kParse, fmt::format("bad router count '{}'", n_text));
  }
  const auto hex = text.substr(semi + 6);
  const std::size_t p = num_links(n);
  const std::size_t digits = (p + 3) / 4;
  if (hex.size() != digits) {
    throw Error(ErrorKind::kParse,
                fmt::format("n={} needs {} hex digits, got {}", n, digits,
                            hex.size()));
  }
  std::vector<std::uint8_t> out(p, 0);
  for (std::size_t d = 0; d < digits; ++d) {
    // Most significant digit first: string position 0 holds digit digits-1.
    const int v = hex_value(hex[digits - 1 - d]);
    if (v < 0) {
      throw Error(ErrorKind::kParse, fmt::format("bad hex digit in '{}'", hex));
    }
    for (int b = 0; b < 4; ++b) {
      const std::size_t k = 4 * d + static_cast<std::size_t>(b);
      if ((v >> b) & 1) {
        if (k >= p) {
          throw Error(ErrorKind::kParse, "hex allocation sets bits beyond p");
        }
        out[k] = 1;
      }
    }
  }
  return LinkAllocation(n, std::move(out));
}

bool LinkAllocation::test(LinkIndex k) const {
  if (k >= bits_.size()) {
    throw Error(ErrorKind::kIndex,
                fmt::format("link index {} out of range [0, {})", k, bits_.size()));
  }
  return bits_[k] != 0;
}

bool LinkAllocation::has_link(RouterId i, RouterId j) const {
  if (i > j) std::swap(i, j);
  return bits_[link_index(i, j, n_)] != 0;
}

std::size_t LinkAllocation::link_count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

void LinkAllocation::set(LinkIndex k, bool present) {
  if (k >= bits_.size()) {
    throw Error(ErrorKind::kIndex,
                fmt::format("link index {} out of range [0, {})", k, bits_.size()));
  }
  bits_[k] = present ? 1 : 0;
}

std::string LinkAllocation::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k]) s[k] = '1';
  }
  return s;
}

std::string LinkAllocation::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (bits_.size() + 3) / 4;
  std::string hex(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t k = 4 * d + static_cast<std::size_t>(b);
      if (k < bits_.size() && bits_[k]) v |= 1 << b;
    }
    hex[digits - 1 - d] = kDigits[v];
  }
  return fmt::format("n={};bits={}", n_, hex);
}

std::vector<std::vector<RouterId>> LinkAllocation::adjacency() const {
  std::vector<std::vector<RouterId>> adj(static_cast<std::size_t>(n_));
  LinkIndex k = 0;
  for (RouterId i = 0; i < n_; ++i) {
    for (RouterId j = i + 1; j < n_; ++j, ++k) {
      if (bits_[k]) {
        adj[static_cast<std::size_t>(i)].push_back(j);
        adj[static_cast<std::size_t>(j)].push_back(i);
      }
    }
  }
  // Appending in (i, j) order leaves each list sorted already.
  return adj;
}

std::size_t LinkAllocationHash::operator()(const LinkAllocation& a) const noexcept {
  // FNV-1a over the bit vector, packed 8 bits per byte.
  std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(a.n_routers());
  std::uint8_t acc = 0;
  const auto& bits = a.bits();
  for (std::size_t k = 0; k < bits.size(); ++k) {
    acc = static_cast<std::uint8_t>(acc | (bits[k] << (k % 8)));
    if (k % 8 == 7 || k + 1 == bits.size()) {
      h = (h ^ acc) * 1099511628211ULL;
      acc = 0;
    }
  }
  return static_cast<std::size_t>(h);
}

bool is_connected(const LinkAllocation& a) {
  const int n = a.n_routers();
  if (a.link_count() + 1 < static_cast<std::size_t>(n)) return false;
  const auto adj = a.adjacency();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  std::vector<RouterId> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const RouterId r = stack.back();
    stack.pop_back();
    for (RouterId q : adj[static_cast<std::size_t>(r)]) {
      if (!seen[static_cast<std::size_t>(q)]) {
        seen[static_cast<std::size_t>(q)] = 1;
        ++visited;
        stack.push_back(q);
      }
    }
  }
  return visited == n;
}

LinkAllocation mesh_allocation(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols < 2) {
    throw Error(ErrorKind::kDomain,
                fmt::format("mesh needs at least two tiles, got {}x{}", rows, cols));
  }
  const int n = rows * cols;
  LinkAllocation a(n);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const RouterId id = r * cols + c;
      if (c + 1 < cols) a.set(link_index(id, id + 1, n), true);
      if (r + 1 < rows) a.set(link_index(id, id + cols, n), true);
    }
  }
  return a;
}

LinkAllocation fully_connected_allocation(int n) {
  return LinkAllocation(n, std::vector<std::uint8_t>(num_links(n), 1));
}

LinkAllocation random_allocation(int n, Rng& rng, bool require_connected) {
  const std::size_t p = num_links(n);
  for (int attempt = 0; attempt < kMaxConnectedAttempts; ++attempt) {
    std::vector<std::uint8_t> bits(p);
    std::uint64_t word = 0;
    for (std::size_t k = 0; k < p; ++k) {
      if (k % 64 == 0) word = rng();
      bits[k] = static_cast<std::uint8_t>((word >> (k % 64)) & 1U);
    }
    LinkAllocation a(n, std::move(bits));
    if (!require_connected || is_connected(a)) return a;
  }
  throw Error(ErrorKind::kSamplingFailure,
              fmt::format("no connected allocation for n={} in {} attempts", n,
                          kMaxConnectedAttempts));
}

LinkAllocation random_allocation(int n, std::uint64_t seed,
                                 bool require_connected) {
  Rng rng(seed);
  return random_allocation(n, rng, require_connected);
}

LinkAllocation flip_link(const LinkAllocation& a, LinkIndex k) {
  LinkAllocation out = a;
  out.set(k, !a.test(k));
  return out;
}

}  // namespace nocpareto
