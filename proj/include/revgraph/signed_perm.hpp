#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace revgraph {

// An element of the hyperoctahedral group B_n: a permutation of {1..n} with a
// sign per position. Immutable after construction; |B_n| = 2^n * n!.
class SignedPerm {
 public:
  // entries[h-1] is the signed value at position h (1-based in the API).
  explicit SignedPerm(std::vector<int> entries);

  static SignedPerm identity(int n);

  int n() const { return static_cast<int>(entries_.size()); }
  int entry(int pos) const { return entries_[pos - 1]; }  // 1-based
  const std::vector<int>& entries() const { return entries_; }

  bool operator==(const SignedPerm& other) const = default;

 private:
  std::vector<int> entries_;
};

// Segment reversal rho_{i,j}: flips the order and the signs of positions i..j.
struct Reversal {
  int i = 1;
  int j = 1;
};

// tau_{i,j}: swaps positions i and j and negates both entries; i == j is a
// single sign flip (included so the generator count matches C(n+1,2)).
struct SignChangeTransposition {
  int i = 1;
  int j = 1;
};

enum class GeneratorKind {
  Reversals,
  SignChangeTranspositions,
  // Reporting variant without the i == j sign flips; degree C(n,2).
  SignChangeTranspositionsNoFlip,
};

struct GeneratorSet {
  GeneratorKind kind = GeneratorKind::Reversals;
  int n = 1;

  std::uint64_t count() const;
};

const char* generator_kind_name(GeneratorKind kind);

SignedPerm compose(const SignedPerm& v, const SignedPerm& w);
SignedPerm inverse(const SignedPerm& v);

SignedPerm apply_reversal(const SignedPerm& v, Reversal r);
SignedPerm apply_transposition(const SignedPerm& v, SignChangeTransposition t);

// The generators as group elements; right-multiplication by them equals the
// direct segment/swap action above.
SignedPerm reversal_as_perm(int n, Reversal r);
SignedPerm transposition_as_perm(int n, SignChangeTransposition t);
std::vector<SignedPerm> generators(const GeneratorSet& gs);

// 2^n * n!; representable in 64 bits only for n <= 16, which bounds every
// rank-indexed structure in this library.
inline constexpr int kMaxRankN = 16;
std::uint64_t group_order(int n);

// Mixed-radix bijection B_n <-> [0, 2^n * n!): Lehmer code of |entries| in the
// high digits, one sign bit per position in the low n bits. identity -> 0.
std::uint64_t rank_of(const SignedPerm& v);
SignedPerm unrank(int n, std::uint64_t r);

// Total order used wherever a "smallest" element must be picked
// deterministically. Entry order: -1 < +1 < -2 < +2 < ...
int lex_compare(const SignedPerm& v, const SignedPerm& w);
bool lex_less(const SignedPerm& v, const SignedPerm& w);

// Text form "(+1,-3,+2)"; parsing accepts optional whitespace.
std::string to_string(const SignedPerm& v);
SignedPerm parse_signed_perm(const std::string& text);

std::uint64_t binom2(std::uint64_t m);  // C(m,2)

}  // namespace revgraph
