// Copyright 2026 The simplext Authors.
//
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

// Reference implementations used only by the tests. They follow the
// published counting definitions literally (Counter arithmetic for SARI,
// scan-and-count for BLEU) and share no code with the library.

#ifndef SIMPLEXT_TESTS_ORACLES_HPP_
#define SIMPLEXT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;
using Gram = std::vector<std::string>;
using Counter = std::map<Gram, double>;

inline Counter gram_set(const Tokens& t, std::size_t n) {
  Counter c;
  for (std::size_t i = 0; i + n <= t.size(); ++i) c[Gram(t.begin() + i, t.begin() + i + n)] = 1;
  return c;
}

// Counter subtraction keeps positive results only.
inline Counter minus(const Counter& a, const Counter& b) {
  Counter out;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    const double d = v - (it == b.end() ? 0.0 : it->second);
    if (d > 0) out[k] = d;
  }
  return out;
}

// Counter intersection is the element-wise minimum.
inline Counter meet(const Counter& a, const Counter& b) {
  Counter out;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end()) continue;
    const double m = std::min(v, it->second);
    if (m > 0) out[k] = m;
  }
  return out;
}

inline double total(const Counter& c) {
  double s = 0;
  for (const auto& [k, v] : c) s += v;
  return s;
}

inline double fbeta(double tp, double selected, double relevant, double beta) {
  double precision = 1;
  if (selected > 0) precision = tp / selected;
  if (beta == 0) return precision;
  double recall = 1;
  if (relevant > 0) recall = tp / relevant;
  if (precision > 0 && recall > 0) {
    const double b2 = beta * beta;
    return (1 + b2) * precision * recall / (b2 * precision + recall);
  }
  return 0;
}

// SARI on a 0-100 scale. beta_del = 0 scores deletion by precision, 1 by F1.
inline double sari(const Tokens& src, const Tokens& pred, const std::vector<Tokens>& refs,
                   double beta_del) {
  double keep = 0, add = 0, del = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const Counter s = gram_set(src, n);
    const Counter p = gram_set(pred, n);
    Counter weighted, any;
    int nonempty = 0;
    for (const auto& r : refs) {
      const Counter rc = gram_set(r, n);
      if (rc.empty()) continue;
      ++nonempty;
      for (const auto& [k, v] : rc) weighted[k] += v;
    }
    for (auto& [k, v] : weighted) {
      v /= nonempty;
      any[k] = 1;
    }

    const Counter sp = meet(s, p);
    const Counter sw = meet(s, weighted);
    keep += fbeta(total(meet(sp, sw)), total(sp), total(sw), 1);

    const Counter s_not_p = minus(s, p);
    const Counter s_not_w = minus(s, weighted);
    del += fbeta(total(meet(s_not_p, s_not_w)), total(s_not_p), total(s_not_w), beta_del);

    const Counter added = minus(p, s);
    add += fbeta(total(meet(added, any)), total(added), total(minus(any, s)), 1);
  }
  return 100.0 * (keep / 4 + add / 4 + del / 4) / 3.0;
}

inline std::size_t occurrences(const Tokens& t, const Tokens& hyp, std::size_t at, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + n <= t.size(); ++i) {
    bool same = true;
    for (std::size_t k = 0; k < n && same; ++k) same = t[i + k] == hyp[at + k];
    count += same;
  }
  return count;
}

// Corpus BLEU on a 0-100 scale, unsmoothed, four orders, closest reference
// length (shorter on ties).
inline double bleu(const std::vector<Tokens>& hyps, const std::vector<std::vector<Tokens>>& refs) {
  double matches[4] = {0, 0, 0, 0};
  double totals[4] = {0, 0, 0, 0};
  double c = 0, r = 0;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const Tokens& h = hyps[s];
    c += static_cast<double>(h.size());
    std::size_t best = refs[s][0].size();
    for (const auto& ref : refs[s]) {
      const long d_ref = std::labs(static_cast<long>(ref.size()) - static_cast<long>(h.size()));
      const long d_best = std::labs(static_cast<long>(best) - static_cast<long>(h.size()));
      if (d_ref < d_best || (d_ref == d_best && ref.size() < best)) best = ref.size();
    }
    r += static_cast<double>(best);
    for (std::size_t n = 1; n <= 4; ++n) {
      if (h.size() < n) continue;
      totals[n - 1] += static_cast<double>(h.size() - n + 1);
      for (std::size_t i = 0; i + n <= h.size(); ++i) {
        bool first = true;
        for (std::size_t j = 0; j < i && first; ++j) {
          bool same = true;
          for (std::size_t k = 0; k < n && same; ++k) same = h[j + k] == h[i + k];
          if (same) first = false;
        }
        if (!first) continue;
        const std::size_t in_hyp = occurrences(h, h, i, n);
        std::size_t in_ref = 0;
        for (const auto& ref : refs[s]) in_ref = std::max(in_ref, occurrences(ref, h, i, n));
        matches[n - 1] += static_cast<double>(std::min(in_hyp, in_ref));
      }
    }
  }
  if (c == 0) return 0;
  double log_p = 0;
  for (int n = 0; n < 4; ++n) {
    if (matches[n] == 0 || totals[n] == 0) return 0;
    log_p += std::log(matches[n] / totals[n]);
  }
  const double bp = c < r ? std::exp(1 - r / c) : 1.0;
  return 100.0 * bp * std::exp(log_p / 4);
}

inline std::string join(const Tokens& t) {
  std::string s;
  for (const auto& w : t) s += (s.empty() ? "" : " ") + w;
  return s;
}

inline Tokens random_tokens(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len,
                            const std::vector<std::string>& vocab) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  Tokens t(len(rng));
  for (auto& w : t) w = vocab[pick(rng)];
  return t;
}

}  // namespace oracle

#endif  // SIMPLEXT_TESTS_ORACLES_HPP_
