// Copyright 2026 The deloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "deloc/subset.h"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace deloc {

namespace {
constexpr int kWordBits = 64;
}  // namespace

Subset::Subset(std::initializer_list<int> indices) {
  for (int i : indices) Insert(i);
}

Subset::Subset(std::span<const int> indices) {
  for (int i : indices) Insert(i);
}

Subset Subset::Full(int n) {
  Subset s;
  for (int i = 0; i < n; ++i) s.Insert(i);
  return s;
}

Subset Subset::Singleton(int i) {
  Subset s;
  s.Insert(i);
  return s;
}

void Subset::Insert(int i) {
  if (i < 0) throw std::out_of_range("Subset: negative index");
  const std::size_t w = static_cast<std::size_t>(i / kWordBits);
  if (words_.size() <= w) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (i % kWordBits);
}

void Subset::Erase(int i) {
  if (i < 0) return;
  const std::size_t w = static_cast<std::size_t>(i / kWordBits);
  if (w >= words_.size()) return;
  words_[w] &= ~(std::uint64_t{1} << (i % kWordBits));
  Trim();
}

bool Subset::Contains(int i) const {
  if (i < 0) return false;
  const std::size_t w = static_cast<std::size_t>(i / kWordBits);
  if (w >= words_.size()) return false;
  return (words_[w] >> (i % kWordBits)) & 1u;
}

int Subset::size() const {
  int count = 0;
  for (auto w : words_) count += std::popcount(w);
  return count;
}

bool Subset::empty() const { return words_.empty(); }

int Subset::Bound() const {
  if (words_.empty()) return 0;
  const std::uint64_t top = words_.back();
  return static_cast<int>((words_.size() - 1) * kWordBits) +
         (kWordBits - std::countl_zero(top));
}

std::vector<int> Subset::Indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      const int b = std::countr_zero(bits);
      out.push_back(static_cast<int>(w) * kWordBits + b);
      bits &= bits - 1;
    }
  }
  return out;
}

Subset Subset::Union(const Subset& other) const {
  Subset out = *this;
  out |= other;
  return out;
}

Subset& Subset::operator|=(const Subset& other) {
  if (words_.size() < other.words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

Subset Subset::Intersection(const Subset& other) const {
  Subset out;
  const std::size_t n = std::min(words_.size(), other.words_.size());
  out.words_.resize(n);
  for (std::size_t w = 0; w < n; ++w) out.words_[w] = words_[w] & other.words_[w];
  out.Trim();
  return out;
}

Subset Subset::Difference(const Subset& other) const {
  Subset out = *this;
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) out.words_[w] &= ~other.words_[w];
  out.Trim();
  return out;
}

bool Subset::Intersects(const Subset& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

bool Subset::IsSubsetOf(const Subset& other) const {
  if (words_.size() > other.words_.size()) return false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

std::size_t Subset::Hash() const {
  // FNV-1a over the words.
  std::uint64_t h = 1469598103934665603ull;
  for (auto w : words_) {
    for (int b = 0; b < 8; ++b) {
      h ^= (w >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

std::string Subset::ToString() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i : Indices()) {
    if (!first) os << ' ';
    os << i;
    first = false;
  }
  os << '}';
  return os.str();
}

void Subset::Trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

bool operator==(const Subset& a, const Subset& b) { return a.words_ == b.words_; }

bool operator<(const Subset& a, const Subset& b) {
  const int sa = a.size();
  const int sb = b.size();
  if (sa != sb) return sa < sb;
  return a.Indices() < b.Indices();
}

std::vector<Subset> SubsetsOfSize(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.emplace_back(std::span<const int>(idx));
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

}  // namespace deloc
