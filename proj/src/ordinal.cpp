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

#include "dgame/ordinal.hpp"

#include <cctype>
#include <limits>
#include <utility>

#include "dgame/errors.hpp"

namespace dgame {
namespace {

std::uint64_t CheckedAdd(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    Fail(ErrorCode::kInvalidArgument, "ordinal coefficient overflow");
  }
  return a + b;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Ordinal ParseAll() {
    Ordinal result = ParseSum();
    SkipSpace();
    if (pos_ != text_.size()) Error("unexpected trailing input");
    return result;
  }

 private:
  [[noreturn]] void Error(const std::string& what) const {
    throw ParseError("ordinal '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + what);
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Peek(char c) {
    SkipSpace();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool PeekOmega() {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == 'w') return true;
    return text_.substr(pos_).starts_with("\xCF\x89");  // U+03C9
  }

  void TakeOmega() {
    if (text_[pos_] == 'w') {
      ++pos_;
    } else {
      pos_ += 2;
    }
  }

  std::uint64_t ParseNat() {
    SkipSpace();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
        Error("natural number too large");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) Error("expected a natural number");
    if (pos_ - start > 1 && text_[start] == '0') Error("leading zero");
    return value;
  }

  Ordinal ParseExponent() {
    if (PeekOmega()) {
      TakeOmega();
      return Ordinal::Omega();
    }
    if (Peek('(')) {
      ++pos_;
      Ordinal inner = ParseSum();
      if (!Peek(')')) Error("expected ')'");
      ++pos_;
      if (inner.IsFinite() || inner == Ordinal::Omega()) {
        Error("redundant parentheses around exponent " + inner.ToString());
      }
      return inner;
    }
    const std::uint64_t n = ParseNat();
    if (n == 0) Error("w^0 is written 1");
    if (n == 1) Error("w^1 is written w");
    return Ordinal::FromNat(n);
  }

  OrdinalTerm ParseTerm() {
    if (!PeekOmega()) {
      const std::uint64_t n = ParseNat();
      if (n == 0) Error("zero term inside a sum");
      return OrdinalTerm{Ordinal(), n};
    }
    TakeOmega();
    OrdinalTerm term{Ordinal::One(), 1};
    if (Peek('^')) {
      ++pos_;
      term.exponent = ParseExponent();
    }
    if (Peek('*')) {
      ++pos_;
      term.coefficient = ParseNat();
      if (term.coefficient == 0) Error("coefficient 0");
      if (term.coefficient == 1) Error("coefficient 1 is implicit");
    }
    return term;
  }

  Ordinal ParseSum() {
    SkipSpace();
    if (Peek('0')) {
      const std::size_t save = pos_;
      ++pos_;
      SkipSpace();
      const bool lone =
          pos_ == text_.size() || text_[pos_] == ')';
      if (lone) return Ordinal();
      pos_ = save;
    }
    std::vector<OrdinalTerm> terms;
    terms.push_back(ParseTerm());
    while (Peek('+')) {
      ++pos_;
      OrdinalTerm next = ParseTerm();
      if (!(next.exponent < terms.back().exponent)) {
        Error("exponents must strictly decrease (not Cantor normal form)");
      }
      terms.push_back(std::move(next));
    }
    return Ordinal::FromTerms(std::move(terms));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

bool operator==(const OrdinalTerm& a, const OrdinalTerm& b) {
  return a.coefficient == b.coefficient && a.exponent == b.exponent;
}

bool operator==(const Ordinal& a, const Ordinal& b) {
  return a.terms_ == b.terms_;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (auto c = x.exponent <=> y.exponent; c != 0) return c;
    if (auto c = x.coefficient <=> y.coefficient; c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::strong_ordering Compare(const Ordinal& a, const Ordinal& b) {
  return a <=> b;
}

Ordinal Ordinal::Omega() { return OmegaPower(One()); }

Ordinal Ordinal::FromNat(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back(OrdinalTerm{Ordinal(), n});
  return o;
}

Ordinal Ordinal::OmegaPower(const Ordinal& exponent, std::uint64_t coefficient) {
  Ordinal o;
  if (coefficient > 0) o.terms_.push_back(OrdinalTerm{exponent, coefficient});
  return o;
}

Ordinal Ordinal::FromTerms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) {
      Fail(ErrorCode::kInvalidArgument, "Cantor normal form term with coefficient 0");
    }
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      Fail(ErrorCode::kInvalidArgument,
           "Cantor normal form exponents must strictly decrease");
    }
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

Ordinal Ordinal::Parse(std::string_view text) { return Parser(text).ParseAll(); }

bool Ordinal::IsFinite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.IsZero());
}

bool Ordinal::IsSuccessor() const {
  return !terms_.empty() && terms_.back().exponent.IsZero();
}

std::optional<std::uint64_t> Ordinal::ToNat() const {
  if (terms_.empty()) return 0;
  if (!IsFinite()) return std::nullopt;
  return terms_[0].coefficient;
}

Ordinal Ordinal::Predecessor() const {
  if (!IsSuccessor()) {
    Fail(ErrorCode::kInvalidArgument, "ordinal " + ToString() + " has no predecessor");
  }
  Ordinal o = *this;
  if (--o.terms_.back().coefficient == 0) o.terms_.pop_back();
  return o;
}

Ordinal Ordinal::Successor() const { return Add(*this, One()); }

std::string Ordinal::ToString() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& term : terms_) {
    if (!out.empty()) out += '+';
    if (term.exponent.IsZero()) {
      out += std::to_string(term.coefficient);
      continue;
    }
    out += 'w';
    if (term.exponent != One()) {
      out += '^';
      if (term.exponent.IsFinite() || term.exponent == Omega()) {
        out += term.exponent.ToString();
      } else {
        out += '(' + term.exponent.ToString() + ')';
      }
    }
    if (term.coefficient > 1) out += '*' + std::to_string(term.coefficient);
  }
  return out;
}

std::size_t Ordinal::Hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& term : terms_) {
    h ^= term.exponent.Hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(term.coefficient) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

Ordinal Add(const Ordinal& a, const Ordinal& b) {
  if (b.IsZero()) return a;
  const Ordinal& lead = b.terms().front().exponent;
  std::vector<OrdinalTerm> terms;
  std::uint64_t carried = 0;
  for (const auto& term : a.terms()) {
    if (lead < term.exponent) {
      terms.push_back(term);
    } else if (term.exponent == lead) {
      carried = term.coefficient;
      break;
    } else {
      break;
    }
  }
  for (std::size_t i = 0; i < b.terms().size(); ++i) {
    OrdinalTerm term = b.terms()[i];
    if (i == 0) term.coefficient = CheckedAdd(term.coefficient, carried);
    terms.push_back(std::move(term));
  }
  return Ordinal::FromTerms(std::move(terms));
}

Ordinal NatSum(const Ordinal& a, const Ordinal& b) {
  std::vector<OrdinalTerm> terms;
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& x = a.terms();
  const auto& y = b.terms();
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && y[j].exponent < x[i].exponent)) {
      terms.push_back(x[i++]);
    } else if (i == x.size() || x[i].exponent < y[j].exponent) {
      terms.push_back(y[j++]);
    } else {
      terms.push_back(OrdinalTerm{x[i].exponent,
                                  CheckedAdd(x[i].coefficient, y[j].coefficient)});
      ++i;
      ++j;
    }
  }
  return Ordinal::FromTerms(std::move(terms));
}

}  // namespace dgame
