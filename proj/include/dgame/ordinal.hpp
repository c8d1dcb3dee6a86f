// Copyright 2026 The dgame Authors
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

#ifndef DGAME_ORDINAL_HPP_
#define DGAME_ORDINAL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dgame {

struct OrdinalTerm;

// An ordinal below epsilon_0 in Cantor normal form:
//   w^e_0 * k_0 + w^e_1 * k_1 + ... with e_0 > e_1 > ... and every k_i >= 1.
// The empty term list is 0. Every value is canonical, so equality is
// structural and hashing is well defined.
class Ordinal {
 public:
  Ordinal() = default;  // zero

  static Ordinal Zero();
  static Ordinal One();
  static Ordinal Omega();
  static Ordinal FromNat(std::uint64_t n);
  // w^exponent * coefficient; coefficient 0 yields zero.
  static Ordinal OmegaPower(const Ordinal& exponent,
                            std::uint64_t coefficient = 1);
  // Builds from terms, rejecting anything that is not in Cantor normal form.
  static Ordinal FromTerms(std::vector<OrdinalTerm> terms);
  // Parses `0`, `7`, `w`, `w*3`, `w^2*3+w+4`, `w^(w+1)`. Non-canonical input
  // such as `1+w` or `w+w` is rejected with a ParseError.
  static Ordinal Parse(std::string_view text);

  const std::vector<OrdinalTerm>& terms() const { return terms_; }
  bool IsZero() const;
  bool IsFinite() const;
  bool IsSuccessor() const;
  bool IsLimit() const;
  std::optional<std::uint64_t> ToNat() const;
  // Requires IsSuccessor().
  Ordinal Predecessor() const;
  Ordinal Successor() const;

  std::string ToString() const;
  std::size_t Hash() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  friend bool operator==(const OrdinalTerm& a, const OrdinalTerm& b);
};

inline Ordinal Ordinal::Zero() { return Ordinal(); }
inline Ordinal Ordinal::One() { return FromNat(1); }
inline bool Ordinal::IsZero() const { return terms_.empty(); }
inline bool Ordinal::IsLimit() const { return !IsZero() && !IsSuccessor(); }

// Three-way comparison in the ordinal order.
std::strong_ordering Compare(const Ordinal& a, const Ordinal& b);

// Ordinary (left-absorbing) ordinal addition: 1 + w = w.
Ordinal Add(const Ordinal& a, const Ordinal& b);

// Natural (Hessenberg) sum: coefficient-wise merge of the normal forms.
// Commutative and associative; never smaller than Add(a, b).
Ordinal NatSum(const Ordinal& a, const Ordinal& b);

inline Ordinal Max(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }
inline Ordinal Min(const Ordinal& a, const Ordinal& b) { return a < b ? a : b; }

struct OrdinalHash {
  std::size_t operator()(const Ordinal& o) const { return o.Hash(); }
};

}  // namespace dgame

#endif  // DGAME_ORDINAL_HPP_
