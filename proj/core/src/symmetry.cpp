#include "cantor/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "cantor/digitsys.hpp"
#include "cantor/error.hpp"
#include "cantor/numtheory.hpp"

namespace cantor {

namespace {

using u64 = std::uint64_t;

u64 pow3(unsigned n) {
  BigInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 3, n);
  if (!v.fits_ulong_p()) throw DomainError("3^" + std::to_string(n) + " does not fit in 64 bits");
  return v.get_ui();
}

DenominatorRecord record_for(u64 q, const std::optional<DenominatorRecord>& record) {
  if (record) {
    if (record->q != q) {
      throw DomainError("record is for q = " + std::to_string(record->q) + ", expected " + std::to_string(q));
    }
    return *record;
  }
  EnumerationOptions opts;
  opts.keep_numerators = false;
  return enumerate(q, std::nullopt, opts);
}

}  // namespace

std::string_view to_string(SymmetryKind k) noexcept {
  switch (k) {
    case SymmetryKind::omega_bar: return "bar";
    case SymmetryKind::pad0: return "pad0";
    case SymmetryKind::pad2: return "pad2";
    case SymmetryKind::padded: return "pad";
  }
  return "?";
}

SymmetryKind symmetry_kind_from_string(std::string_view s) {
  if (s == "bar" || s == "omega_bar") return SymmetryKind::omega_bar;
  if (s == "pad0") return SymmetryKind::pad0;
  if (s == "pad2") return SymmetryKind::pad2;
  if (s == "pad" || s == "padded") return SymmetryKind::padded;
  throw DomainError("unknown symmetry kind '" + std::string(s) + "'");
}

u64 word_length(SymmetryKind kind, unsigned r) {
  return kind == SymmetryKind::omega_bar ? 2ULL * r : 3ULL * r;
}

u64 target_q(SymmetryKind kind, unsigned r) {
  if (r == 0) throw DomainError("symmetry: r must be >= 1");
  const u64 p = pow3(r);
  if (kind == SymmetryKind::omega_bar) return p + 1;
  return pow3(2 * r) + p + 1;
}

std::vector<std::string> generate_words(SymmetryKind kind, unsigned r, u64 max_words) {
  if (r == 0) throw DomainError("symmetry: r must be >= 1");
  const u64 length = word_length(kind, r);
  const u64 pads = kind == SymmetryKind::padded ? 2 : 1;
  if (r >= 40 || (u64{1} << r) * pads * length > max_words) {
    throw BudgetError("symmetry family r = " + std::to_string(r) + " exceeds the word budget " +
                      std::to_string(max_words));
  }
  std::vector<std::string> tails;
  if (kind == SymmetryKind::pad0 || kind == SymmetryKind::padded) tails.emplace_back(r, '0');
  if (kind == SymmetryKind::pad2 || kind == SymmetryKind::padded) tails.emplace_back(r, '2');
  if (kind == SymmetryKind::omega_bar) tails.emplace_back();

  std::vector<std::string> words;
  for (u64 mask = 0; mask < (u64{1} << r); ++mask) {
    std::string w(r, '0');
    std::string bar(r, '2');
    for (unsigned i = 0; i < r; ++i) {
      if (mask >> (r - 1 - i) & 1) {
        w[i] = '2';
        bar[i] = '0';
      }
    }
    for (const auto& tail : tails) {
      const std::string base = w + bar + tail;
      for (u64 s = 0; s < length; ++s) words.push_back(base.substr(s) + base.substr(0, s));
    }
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

u64 word_denominator(std::string_view word) {
  if (word.empty()) throw DomainError("word_denominator: empty word");
  const BigInt p = digits_value(digits_from_string(word), 3);
  BigInt q;
  mpz_ui_pow_ui(q.get_mpz_t(), 3, word.size());
  q -= 1;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  q /= g;
  if (!q.fits_ulong_p()) throw DomainError("word_denominator: denominator exceeds 64 bits");
  return q.get_ui();
}

CensusRow census(SymmetryKind kind, unsigned r, const std::optional<DenominatorRecord>& record) {
  CensusRow row;
  row.r = r;
  row.q = target_q(kind, r);
  const auto words = generate_words(kind, r);
  row.x = words.size();
  row.z = static_cast<u64>(
      std::count_if(words.begin(), words.end(), [&](const std::string& w) { return word_denominator(w) == row.q; }));
  const DenominatorRecord rec = record_for(row.q, record);
  row.n_q = rec.n_q;
  row.mlo = rec.mlo;
  const BigInt num = BigInt(row.x) * BigInt(euler_phi(row.q));
  const BigInt den = BigInt(row.q);
  row.y_floor = BigInt(num / den).get_ui();
  row.y_round = round_quotient(num, den).get_ui();
  row.y_plus_mlo = row.y_floor + row.mlo;
  return row;
}

CorrectedPrediction corrected_prediction(unsigned r, const std::optional<DenominatorRecord>& record) {
  CorrectedPrediction out;
  out.r = r;
  out.q = target_q(SymmetryKind::omega_bar, r);
  const DenominatorRecord rec = record_for(out.q, record);
  out.n_q = rec.n_q;
  out.mlo = rec.mlo;
  const double factor = std::pow(2.0 / 3.0, static_cast<double>(r));
  if (out.mlo != 0) {
    out.ratio = static_cast<double>(out.n_q) / static_cast<double>(out.mlo);
    out.corrected = factor * *out.ratio;
  }
  out.revised_estimate = static_cast<double>(out.mlo) / factor;
  return out;
}

}  // namespace cantor
