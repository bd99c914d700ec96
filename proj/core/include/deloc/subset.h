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

#ifndef DELOC_SUBSET_H_
#define DELOC_SUBSET_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace deloc {

// A finite set of coordinate indices {0, 1, ...}, stored as a bitset.
//
// Subsets are the keys of every set-indexed quantity in the library
// (marginal entropies, neighborhoods, factor supports), so equality and
// hashing are structural: two subsets with the same members compare equal
// regardless of how they were built.
class Subset {
 public:
  Subset() = default;
  Subset(std::initializer_list<int> indices);
  explicit Subset(std::span<const int> indices);

  // {0, ..., n-1}.
  static Subset Full(int n);
  static Subset Singleton(int i);

  void Insert(int i);
  void Erase(int i);
  bool Contains(int i) const;

  // Number of members.
  int size() const;
  bool empty() const;

  // Largest member + 1, or 0 for the empty set.
  int Bound() const;

  // Sorted member list.
  std::vector<int> Indices() const;

  Subset Union(const Subset& other) const;
  Subset Intersection(const Subset& other) const;
  Subset Difference(const Subset& other) const;
  bool Intersects(const Subset& other) const;
  bool IsSubsetOf(const Subset& other) const;

  Subset& operator|=(const Subset& other);

  std::size_t Hash() const;
  std::string ToString() const;

  friend bool operator==(const Subset& a, const Subset& b);
  // Total order (by size, then lexicographic on words) for use in ordered
  // containers.
  friend bool operator<(const Subset& a, const Subset& b);

 private:
  void Trim();

  std::vector<std::uint64_t> words_;
};

struct SubsetHash {
  std::size_t operator()(const Subset& s) const { return s.Hash(); }
};

// All subsets of {0..n-1} with exactly k members, in lexicographic order.
std::vector<Subset> SubsetsOfSize(int n, int k);

}  // namespace deloc

#endif  // DELOC_SUBSET_H_
