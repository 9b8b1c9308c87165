#pragma once
// Test-side oracles and generators. Everything here is deliberately
// independent of the library implementation paths it checks: full-matrix DP
// for edit distance, brute-force block matching, and decimal string
// arithmetic for rounding.

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "tsrkit/core/record.hpp"
#include "tsrkit/core/taxonomy.hpp"

namespace testing_oracles {

// Full-matrix Levenshtein over Unicode code points (decoded naively: ASCII
// bytes are single units; multi-byte sequences are grouped by leading bits).
inline std::vector<unsigned> decode_points(const std::string& s) {
  std::vector<unsigned> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if ((b >> 5) == 0x6) len = 2;
    else if ((b >> 4) == 0xE) len = 3;
    else if ((b >> 3) == 0x1E) len = 4;
    unsigned cp = 0;
    bool valid = i + len <= s.size();
    if (valid) {
      for (std::size_t k = 0; k < len; ++k) {
        const auto bb = static_cast<unsigned char>(s[i + k]);
        if (k > 0 && (bb >> 6) != 0x2) valid = false;
        cp = (cp << 8) | bb;
      }
    }
    if (!valid) {
      out.push_back(0xFFFDu);
      i += 1;
      continue;
    }
    out.push_back(len == 1 ? b : cp);
    i += len;
  }
  return out;
}

inline std::size_t dp_edit_distance(const std::string& a, const std::string& b) {
  const auto ua = decode_points(a);
  const auto ub = decode_points(b);
  std::vector<std::vector<std::size_t>> d(ua.size() + 1, std::vector<std::size_t>(ub.size() + 1));
  for (std::size_t i = 0; i <= ua.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= ub.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= ua.size(); ++i)
    for (std::size_t j = 1; j <= ub.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (ua[i - 1] == ub[j - 1] ? 0u : 1u)});
  return d[ua.size()][ub.size()];
}

inline double dp_levenshtein_sim(const std::string& a, const std::string& b) {
  const std::size_t la = decode_points(a).size();
  const std::size_t lb = decode_points(b).size();
  const std::size_t longest = std::max(la, lb);
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(dp_edit_distance(a, b)) / static_cast<double>(longest);
}

// Brute-force longest common contiguous block: scan every (i, j) start pair,
// keep the longest run, ties by lowest i then lowest j. Recurse on both
// sides and total the matched length.
template <typename Tok>
std::size_t brute_matched(const std::vector<Tok>& a, const std::vector<Tok>& b, std::size_t alo,
                          std::size_t ahi, std::size_t blo, std::size_t bhi) {
  std::size_t best_len = 0, best_i = alo, best_j = blo;
  for (std::size_t i = alo; i < ahi; ++i) {
    for (std::size_t j = blo; j < bhi; ++j) {
      std::size_t len = 0;
      while (i + len < ahi && j + len < bhi && a[i + len] == b[j + len]) ++len;
      if (len > best_len) {
        best_len = len;
        best_i = i;
        best_j = j;
      }
    }
  }
  if (best_len == 0) return 0;
  return best_len + brute_matched(a, b, alo, best_i, blo, best_j) +
         brute_matched(a, b, best_i + best_len, ahi, best_j + best_len, bhi);
}

template <typename Tok>
double brute_token_sim(const std::vector<Tok>& a, const std::vector<Tok>& b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const std::size_t m = brute_matched(a, b, 0, a.size(), 0, b.size());
  return 2.0 * static_cast<double>(m) / static_cast<double>(a.size() + b.size());
}

// Exact decimal rendering of a double at two places, round half to even,
// minimal digits. Works on the double's exact decimal expansion (binary
// fractions terminate), so it is a true decimal-arithmetic oracle.
inline std::string decimal_round_2dp(double v) {
  char buf[1400];
  std::snprintf(buf, sizeof(buf), "%.1100f", v);
  std::string s(buf);
  bool negative = false;
  if (!s.empty() && s[0] == '-') {
    negative = true;
    s.erase(0, 1);
  }
  const auto dot = s.find('.');
  std::string intpart = s.substr(0, dot);
  std::string frac = s.substr(dot + 1);
  while (frac.size() < 3) frac.push_back('0');

  std::string kept = frac.substr(0, 2);
  const std::string rest = frac.substr(2);

  bool round_up = false;
  if (rest[0] > '5') {
    round_up = true;
  } else if (rest[0] == '5') {
    const bool tail_nonzero = rest.find_first_not_of('0', 1) != std::string::npos;
    if (tail_nonzero) round_up = true;
    else round_up = ((kept[1] - '0') % 2) == 1;  // exact half: to even
  }
  if (round_up) {
    int carry = 1;
    for (int i = 1; i >= 0 && carry; --i) {
      const int d = kept[static_cast<std::size_t>(i)] - '0' + carry;
      kept[static_cast<std::size_t>(i)] = static_cast<char>('0' + d % 10);
      carry = d / 10;
    }
    if (carry) {
      int i = static_cast<int>(intpart.size()) - 1;
      for (; i >= 0 && carry; --i) {
        const int d = intpart[static_cast<std::size_t>(i)] - '0' + carry;
        intpart[static_cast<std::size_t>(i)] = static_cast<char>('0' + d % 10);
        carry = d / 10;
      }
      if (carry) intpart.insert(intpart.begin(), '1');
    }
  }
  if (kept[1] == '0') kept.pop_back();  // minimal digits, at least one
  std::string out = intpart + "." + kept;
  const bool is_zero = out.find_first_not_of("0.", 0) == std::string::npos;
  if (negative && !is_zero) out.insert(out.begin(), '-');
  return out;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240817);
  return gen;
}

inline std::string random_ascii(std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_d(0, max_len);
  std::uniform_int_distribution<int> ch(32, 126);
  std::string s;
  const std::size_t n = len_d(rng());
  for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>(ch(rng())));
  return s;
}

inline std::string random_unicode(std::size_t max_len) {
  static const char* pool[] = {"a", "b", "z", "0", " ", ",", "\xC3\xA9",      // e-acute
                               "\xE4\xB8\xAD",                                 // CJK
                               "\xF0\x9F\x98\x80",                             // emoji
                               "\xCE\xB1"};                                    // alpha
  std::uniform_int_distribution<std::size_t> len_d(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, sizeof(pool) / sizeof(pool[0]) - 1);
  std::string s;
  const std::size_t n = len_d(rng());
  for (std::size_t i = 0; i < n; ++i) s += pool[pick(rng())];
  return s;
}

inline tsrkit::DatasetRecord random_record(std::size_t index) {
  using namespace tsrkit;
  std::uniform_int_distribution<std::size_t> len_d(kMinSegmentLength, 40);
  std::uniform_int_distribution<std::size_t> ch_d(1, 4);
  std::uniform_real_distribution<double> val(-5.0, 5.0);

  DatasetRecord rec;
  Sample& s = rec.sample;
  s.id = "rand-" + std::to_string(index);
  s.domain = "Test-Domain";
  s.context = "randomized record " + std::to_string(index);
  const std::size_t n = len_d(rng());
  const std::size_t ch = ch_d(rng());
  for (std::size_t c = 0; c < ch; ++c) {
    Channel channel;
    channel.name = ch == 1 ? "value" : "ch" + std::to_string(c + 1);
    for (std::size_t t = 0; t < n; ++t) channel.values.push_back(val(rng()));
    s.segment.channels.push_back(std::move(channel));
  }
  s.segment.seed = index;
  const Arity arity = s.segment.arity();
  const auto& cats = catalog(arity);
  s.is_anomaly = (rng()() % 4) != 0;
  if (s.is_anomaly) {
    s.segment.anomaly_window = IndexRange{2, n / 2};
    s.gold_category = cats[1 + rng()() % (cats.size() - 1)];
    rec.final_thought = random_ascii(60);
  } else {
    s.gold_category = cats[0];
  }
  rec.final_action = s.gold_category;
  if (rng()() % 2 == 0) {
    s.image_ref = "images/" + s.id + ".svg";
    rec.provenance = Provenance{{"m1", "m2"}, (rng()() % 2) == 0};
  }
  return rec;
}

}  // namespace testing_oracles
