#include "revgraph/signed_perm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "revgraph/errors.hpp"

namespace revgraph {

namespace {

void validate_entries(const std::vector<int>& entries) {
  const int n = static_cast<int>(entries.size());
  if (n == 0) throw std::invalid_argument("signed permutation must have n >= 1");
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int e : entries) {
    const int a = std::abs(e);
    if (a < 1 || a > n)
      throw std::invalid_argument("entry out of range in signed permutation");
    if (seen[a]) throw std::invalid_argument("duplicate magnitude in signed permutation");
    seen[a] = 1;
  }
}

}  // namespace

SignedPerm::SignedPerm(std::vector<int> entries) : entries_(std::move(entries)) {
  validate_entries(entries_);
}

SignedPerm SignedPerm::identity(int n) {
  if (n < 1) throw std::invalid_argument("identity requires n >= 1");
  std::vector<int> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[i] = i + 1;
  return SignedPerm(std::move(e));
}

std::uint64_t binom2(std::uint64_t m) { return m * (m - 1) / 2; }

std::uint64_t GeneratorSet::count() const {
  const auto nn = static_cast<std::uint64_t>(n);
  if (kind == GeneratorKind::SignChangeTranspositionsNoFlip) return binom2(nn);
  return binom2(nn + 1);
}

const char* generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Reversals:
      return "reversals";
    case GeneratorKind::SignChangeTranspositions:
      return "transpositions";
    case GeneratorKind::SignChangeTranspositionsNoFlip:
      return "transpositions-noflip";
  }
  return "?";
}

SignedPerm compose(const SignedPerm& v, const SignedPerm& w) {
  if (v.n() != w.n())
    throw std::invalid_argument("compose: mismatched lengths");
  const int n = v.n();
  std::vector<int> res(static_cast<std::size_t>(n));
  for (int h = 0; h < n; ++h) {
    const int wh = w.entries()[h];
    res[h] = wh > 0 ? v.entries()[wh - 1] : -v.entries()[-wh - 1];
  }
  return SignedPerm(std::move(res));
}

SignedPerm inverse(const SignedPerm& v) {
  const int n = v.n();
  std::vector<int> res(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const int val = v.entries()[k - 1];
    res[std::abs(val) - 1] = val > 0 ? k : -k;
  }
  return SignedPerm(std::move(res));
}

namespace {

void check_range(int n, int i, int j) {
  if (i < 1 || j < i || j > n)
    throw std::invalid_argument("segment indices must satisfy 1 <= i <= j <= n");
}

}  // namespace

SignedPerm apply_reversal(const SignedPerm& v, Reversal r) {
  check_range(v.n(), r.i, r.j);
  std::vector<int> res = v.entries();
  for (int h = r.i; h <= r.j; ++h) res[h - 1] = -v.entries()[r.i + r.j - h - 1];
  return SignedPerm(std::move(res));
}

SignedPerm apply_transposition(const SignedPerm& v, SignChangeTransposition t) {
  check_range(v.n(), t.i, t.j);
  std::vector<int> res = v.entries();
  res[t.i - 1] = -v.entries()[t.j - 1];
  res[t.j - 1] = -v.entries()[t.i - 1];
  return SignedPerm(std::move(res));
}

SignedPerm reversal_as_perm(int n, Reversal r) {
  return apply_reversal(SignedPerm::identity(n), r);
}

SignedPerm transposition_as_perm(int n, SignChangeTransposition t) {
  return apply_transposition(SignedPerm::identity(n), t);
}

std::vector<SignedPerm> generators(const GeneratorSet& gs) {
  if (gs.n < 1) throw std::invalid_argument("generator set requires n >= 1");
  std::vector<SignedPerm> out;
  out.reserve(gs.count());
  const bool transp = gs.kind != GeneratorKind::Reversals;
  const bool skip_diagonal =
      gs.kind == GeneratorKind::SignChangeTranspositionsNoFlip;
  for (int i = 1; i <= gs.n; ++i)
    for (int j = i; j <= gs.n; ++j) {
      if (skip_diagonal && i == j) continue;
      out.push_back(transp ? transposition_as_perm(gs.n, {i, j})
                           : reversal_as_perm(gs.n, {i, j}));
    }
  return out;
}

std::uint64_t group_order(int n) {
  if (n < 1) throw std::invalid_argument("group order requires n >= 1");
  if (n > kMaxRankN)
    throw infeasible_error("rank space overflows 64 bits for n > 16 (got n = " +
                           std::to_string(n) + ")");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f << n;
}

std::uint64_t rank_of(const SignedPerm& v) {
  const int n = v.n();
  group_order(n);  // range guard
  std::vector<std::uint64_t> facts(static_cast<std::size_t>(n), 1);
  for (int i = 1; i < n; ++i) facts[i] = facts[i - 1] * static_cast<std::uint64_t>(i);
  std::uint64_t lehmer = 0;
  std::uint64_t signbits = 0;
  for (int i = 0; i < n; ++i) {
    const int ai = std::abs(v.entries()[i]);
    int smaller_after = 0;
    for (int j = i + 1; j < n; ++j)
      smaller_after += std::abs(v.entries()[j]) < ai;
    lehmer += static_cast<std::uint64_t>(smaller_after) * facts[n - 1 - i];
    if (v.entries()[i] < 0) signbits |= 1ULL << i;
  }
  return (lehmer << n) | signbits;
}

SignedPerm unrank(int n, std::uint64_t r) {
  const std::uint64_t order = group_order(n);
  if (r >= order)
    throw std::invalid_argument("rank out of range for B_" + std::to_string(n));
  const std::uint64_t signbits = r & ((1ULL << n) - 1);
  std::uint64_t lehmer = r >> n;
  std::vector<std::uint64_t> facts(static_cast<std::size_t>(n), 1);
  for (int i = 1; i < n; ++i) facts[i] = facts[i - 1] * static_cast<std::uint64_t>(i);
  std::vector<int> avail(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) avail[i] = i + 1;
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::uint64_t f = facts[n - 1 - i];
    const auto idx = static_cast<std::size_t>(lehmer / f);
    lehmer %= f;
    out[i] = avail[idx];
    avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  for (int i = 0; i < n; ++i)
    if (signbits & (1ULL << i)) out[i] = -out[i];
  return SignedPerm(std::move(out));
}

namespace {

// -1 < +1 < -2 < +2 < ...
inline int lex_key(int e) { return 2 * (std::abs(e) - 1) + (e > 0 ? 1 : 0); }

}  // namespace

int lex_compare(const SignedPerm& v, const SignedPerm& w) {
  if (v.n() != w.n())
    throw std::invalid_argument("lex_compare: mismatched lengths");
  for (int h = 0; h < v.n(); ++h) {
    const int a = lex_key(v.entries()[h]);
    const int b = lex_key(w.entries()[h]);
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

bool lex_less(const SignedPerm& v, const SignedPerm& w) {
  return lex_compare(v, w) < 0;
}

std::string to_string(const SignedPerm& v) {
  std::ostringstream os;
  os << '(';
  for (int h = 0; h < v.n(); ++h) {
    if (h) os << ',';
    const int e = v.entries()[h];
    os << (e > 0 ? '+' : '-') << std::abs(e);
  }
  os << ')';
  return os.str();
}

SignedPerm parse_signed_perm(const std::string& text) {
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '(')
    throw std::invalid_argument("signed permutation must start with '('");
  ++pos;
  std::vector<int> entries;
  while (true) {
    skip_ws();
    int sign = 1;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    }
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw std::invalid_argument("expected digit in signed permutation");
    long val = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      val = val * 10 + (text[pos] - '0');
      if (val > 1 << 20) throw std::invalid_argument("entry too large");
      ++pos;
    }
    entries.push_back(sign * static_cast<int>(val));
    skip_ws();
    if (pos >= text.size())
      throw std::invalid_argument("unterminated signed permutation");
    if (text[pos] == ',') {
      ++pos;
      continue;
    }
    if (text[pos] == ')') {
      ++pos;
      break;
    }
    throw std::invalid_argument("unexpected character in signed permutation");
  }
  skip_ws();
  if (pos != text.size())
    throw std::invalid_argument("trailing characters after signed permutation");
  return SignedPerm(std::move(entries));
}

}  // namespace revgraph
