#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "sublap/fields.hpp"

namespace sublap {

/// Enumerated iterated brackets Y_1..Y_q with their formal degrees.
/// Word (j1,...,jd) denotes the right-nested bracket [X_j1,[X_j2,[...]]].
/// Degree-1 entries are the original fields in order. Degree-2 words are the
/// unordered pairs j1 <= j2 (the reversed pair is the exact negative and would
/// double-count every volume term); self-brackets are retained, identically
/// zero and flagged, so entry indices are stable. Higher degrees bracket every
/// generator against every degree-(d-1) word.
struct CommutatorBasis {
  struct Entry {
    VectorFieldExpr expr;
    int degree;
    std::vector<int> word;  // 1-based generator indices
    bool zero;              // identically-zero bracket, kept for index stability
  };

  int dim = 0;
  int max_degree = 0;
  std::vector<Entry> entries;

  int size() const { return (int)entries.size(); }
  const Entry& operator[](int i) const { return entries.at(i); }

  /// Indices of entries with degree <= d.
  std::vector<int> up_to_degree(int d) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (entries[i].degree <= d) out.push_back(i);
    return out;
  }

  /// Index of the entry with the given word, or -1.
  int find_word(const std::vector<int>& word) const {
    for (int i = 0; i < size(); ++i)
      if (entries[i].word == word) return i;
    return -1;
  }
};

inline CommutatorBasis enumerate_commutators(const FieldSystem& sys, int Q) {
  if (Q < 1) throw std::invalid_argument("enumerate_commutators: Q must be >= 1");
  sys.validate();
  CommutatorBasis basis;
  basis.dim = sys.dim;
  basis.max_degree = Q;
  const int m = sys.m();
  for (int j = 0; j < m; ++j)
    basis.entries.push_back({sys.fields[j], 1, {j + 1}, sys.fields[j].is_zero()});
  int prev_begin = 0, prev_end = m;
  for (int d = 2; d <= Q; ++d) {
    int begin = basis.size();
    if (d == 2) {
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          VectorFieldExpr e = bracket(sys.fields[i], sys.fields[j]);
          basis.entries.push_back({e, 2, {i + 1, j + 1}, e.is_zero()});
        }
    } else {
      for (int j = 0; j < m; ++j)
        for (int p = prev_begin; p < prev_end; ++p) {
          VectorFieldExpr e = bracket(sys.fields[j], basis.entries[p].expr);
          std::vector<int> word = {j + 1};
          word.insert(word.end(), basis.entries[p].word.begin(), basis.entries[p].word.end());
          basis.entries.push_back({e, d, std::move(word), e.is_zero()});
        }
    }
    prev_begin = begin;
    prev_end = basis.size();
  }
  return basis;
}

}  // namespace sublap
