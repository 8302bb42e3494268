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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nocpareto {

using RouterId = int;
using LinkIndex = std::size_t;
using Rng = std::mt19937_64;

/// Number of possible undirected router-to-router links, n(n-1)/2.
std::size_t num_links(int n);

/// Size of the allocation space, 2^num_links(n), exact.
boost::multiprecision::cpp_int combination_count(int n);

/// Canonical position of the pair {i, j} (i < j), lexicographic by (i, j).
LinkIndex link_index(RouterId i, RouterId j, int n);

/// Inverse of link_index.
std::pair<RouterId, RouterId> link_endpoints(LinkIndex k, int n);

/// A choice of present links over all n(n-1)/2 router pairs. Immutable in
/// spirit: every mutating free function returns a new value.
class LinkAllocation {
 public:
  explicit LinkAllocation(int n_routers);
  LinkAllocation(int n_routers, std::vector<std::uint8_t> bits);

  /// Parses either the canonical '0'/'1' string (n is inferred from the
  /// length) or the compact `n=<n>;bits=<hex>` form.
  static LinkAllocation parse(std::string_view text);
  static LinkAllocation from_bit_string(std::string_view bits);
  static LinkAllocation from_hex(std::string_view text);

  int n_routers() const noexcept { return n_; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool test(LinkIndex k) const;
  bool has_link(RouterId i, RouterId j) const;
  std::size_t link_count() const noexcept;

  void set(LinkIndex k, bool present);

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  std::string to_string() const;
  std::string to_hex() const;

  /// Neighbor lists, each sorted ascending.
  std::vector<std::vector<RouterId>> adjacency() const;

  friend bool operator==(const LinkAllocation&, const LinkAllocation&) = default;
  friend auto operator<=>(const LinkAllocation& a, const LinkAllocation& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  int n_;
  std::vector<std::uint8_t> bits_;
};

struct LinkAllocationHash {
  std::size_t operator()(const LinkAllocation& a) const noexcept;
};

bool is_connected(const LinkAllocation& a);

LinkAllocation mesh_allocation(int rows, int cols);
LinkAllocation fully_connected_allocation(int n);

inline constexpr int kMaxConnectedAttempts = 10'000;

/// Each bit is present with probability 1/2. With `require_connected`,
/// resamples up to kMaxConnectedAttempts times.
LinkAllocation random_allocation(int n, Rng& rng, bool require_connected);
LinkAllocation random_allocation(int n, std::uint64_t seed,
                                 bool require_connected);

LinkAllocation flip_link(const LinkAllocation& a, LinkIndex k);

}  // namespace nocpareto
