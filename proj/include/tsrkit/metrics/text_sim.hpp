#pragma once
// Thought similarity metrics: Levenshtein similarity over Unicode scalar
// values, TF-IDF cosine against a shared corpus, token-sequence similarity by
// recursive longest-common-block matching, and embedding cosine remapped to
// [0, 1]. All four are symmetric and bounded.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsrkit::metrics {

namespace detail {

// UTF-8 decode to scalar values; malformed bytes become U+FFFD so arbitrary
// input stays well-defined.
inline std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = 0xFFFD;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 >> 5) == 0x6) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 >> 4) == 0xE) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 >> 3) == 0x1E) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (len > 1) {
      if (i + len > s.size()) {
        out.push_back(0xFFFD);
        ++i;
        continue;
      }
      bool ok = true;
      char32_t acc = cp;
      for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b >> 6) != 0x2) {
          ok = false;
          break;
        }
        acc = (acc << 6) | (b & 0x3F);
      }
      if (!ok) {
        out.push_back(0xFFFD);
        ++i;
        continue;
      }
      cp = acc;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

}  // namespace detail

inline std::size_t edit_distance(std::string_view a, std::string_view b) {
  const auto ua = detail::decode_utf8(a);
  const auto ub = detail::decode_utf8(b);
  const std::size_t n = ua.size(), m = ub.size();
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = prev[j - 1] + (ua[i - 1] == ub[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

inline double levenshtein_sim(std::string_view a, std::string_view b) {
  const std::size_t la = detail::decode_utf8(a).size();
  const std::size_t lb = detail::decode_utf8(b).size();
  const std::size_t longest = std::max(la, lb);
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(longest);
}

// Lowercased alphanumeric tokens; every other byte separates.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

// Cosine of L2-normalized tf-idf vectors with idf = ln((1+N)/(1+df)) + 1,
// document frequencies taken from the supplied corpus.
inline double tfidf_sim(std::string_view a, std::string_view b,
                        const std::vector<std::string>& corpus) {
  const auto ta = tokenize(a);
  const auto tb = tokenize(b);
  if (ta.empty() && tb.empty()) return 1.0;
  if (ta.empty() || tb.empty()) return 0.0;

  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus) {
    std::map<std::string, bool> seen;
    for (auto& tok : tokenize(doc)) seen.emplace(std::move(tok), true);
    for (const auto& [tok, unused] : seen) {
      (void)unused;
      ++df[tok];
    }
  }
  const double n_docs = static_cast<double>(corpus.size());
  auto idf = [&](const std::string& tok) {
    const auto it = df.find(tok);
    const double d = it == df.end() ? 0.0 : static_cast<double>(it->second);
    return std::log((1.0 + n_docs) / (1.0 + d)) + 1.0;
  };
  auto vectorize = [&](const std::vector<std::string>& toks) {
    std::map<std::string, double> v;
    for (const auto& t : toks) v[t] += 1.0;
    double norm = 0.0;
    for (auto& [t, w] : v) {
      w *= idf(t);
      norm += w * w;
    }
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (auto& [t, w] : v) w /= norm;
    return v;
  };
  const auto va = vectorize(ta);
  const auto vb = vectorize(tb);
  double dot = 0.0;
  for (const auto& [t, w] : va) {
    const auto it = vb.find(t);
    if (it != vb.end()) dot += w * it->second;
  }
  return std::clamp(dot, 0.0, 1.0);
}

namespace detail {

struct Block {
  std::size_t a = 0, b = 0, len = 0;
};

// Longest common contiguous block; ties resolved by lowest start in the
// first sequence, then the second.
inline Block longest_match(const std::vector<std::string>& a, const std::vector<std::string>& b,
                           std::size_t alo, std::size_t ahi, std::size_t blo, std::size_t bhi) {
  Block best{alo, blo, 0};
  std::map<std::string_view, std::vector<std::size_t>> positions;
  for (std::size_t j = blo; j < bhi; ++j) positions[b[j]].push_back(j);
  std::map<std::size_t, std::size_t> run;  // j -> run length ending at (i, j)
  for (std::size_t i = alo; i < ahi; ++i) {
    std::map<std::size_t, std::size_t> next_run;
    const auto it = positions.find(a[i]);
    if (it != positions.end()) {
      for (std::size_t j : it->second) {
        const std::size_t k = (j > blo ? [&] {
          const auto r = run.find(j - 1);
          return r == run.end() ? 0 : r->second;
        }() : 0) + 1;
        next_run[j] = k;
        if (k > best.len) best = {i - k + 1, j - k + 1, k};
      }
    }
    run = std::move(next_run);
  }
  return best;
}

inline std::size_t matched_total(const std::vector<std::string>& a, const std::vector<std::string>& b,
                                 std::size_t alo, std::size_t ahi, std::size_t blo, std::size_t bhi) {
  const Block blk = longest_match(a, b, alo, ahi, blo, bhi);
  if (blk.len == 0) return 0;
  return blk.len + matched_total(a, b, alo, blk.a, blo, blk.b) +
         matched_total(a, b, blk.a + blk.len, ahi, blk.b + blk.len, bhi);
}

}  // namespace detail

// 2M / (|A| + |B|) where M is the total token count covered by the recursive
// longest-block partition.
inline double token_seq_sim(std::string_view a, std::string_view b) {
  const auto ta = tokenize(a);
  const auto tb = tokenize(b);
  if (ta.empty() && tb.empty()) return 1.0;
  if (ta.empty() || tb.empty()) return 0.0;
  const std::size_t m = detail::matched_total(ta, tb, 0, ta.size(), 0, tb.size());
  return 2.0 * static_cast<double>(m) / static_cast<double>(ta.size() + tb.size());
}

// Sentence embedding interface: production runs plug an external encoder,
// tests and offline runs use the deterministic hashed bag-of-words below.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<double> embed(const std::string& text) = 0;
};

class HashedBowEmbedder final : public Embedder {
 public:
  explicit HashedBowEmbedder(std::size_t dimension = 256) : dimension_(dimension) {}

  std::vector<double> embed(const std::string& text) override {
    std::vector<double> v(dimension_, 0.0);
    for (const auto& tok : tokenize(text)) v[fnv1a(tok) % dimension_] += 1.0;
    return v;
  }

 private:
  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    return h;
  }
  std::size_t dimension_;
};

// (1 + cos) / 2, clipped to [0, 1] so all four thought metrics share a range.
// Returns nullopt when the embedder fails; the caller averages over what is
// available and flags the report.
inline std::optional<double> cosine_sim(std::string_view a, std::string_view b, Embedder& embedder) {
  try {
    const auto ea = embedder.embed(std::string(a));
    const auto eb = embedder.embed(std::string(b));
    if (ea.size() != eb.size() || ea.empty()) return std::nullopt;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < ea.size(); ++i) {
      dot += ea[i] * eb[i];
      na += ea[i] * ea[i];
      nb += eb[i] * eb[i];
    }
    double cosine = 0.0;
    if (na > 0.0 && nb > 0.0) cosine = dot / std::sqrt(na * nb);
    else cosine = (na == 0.0 && nb == 0.0) ? 1.0 : 0.0;
    return std::clamp((1.0 + cosine) / 2.0, 0.0, 1.0);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace tsrkit::metrics
