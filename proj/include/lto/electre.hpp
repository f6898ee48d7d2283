#pragma once

// Electre I outranking over a decision matrix of alternatives x criteria.

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lto::stats {

enum class Direction { Minimize, Maximize };

struct Criterion {
  std::string name;
  double weight = 1.0;  // normalized to sum 1 over the retained criteria
  Direction direction = Direction::Minimize;
};

struct DecisionMatrix {
  std::vector<std::string> alternatives;
  std::vector<Criterion> criteria;
  std::vector<std::vector<double>> values;  // [alternative][criterion]
};

struct ElectreOptions {
  // Default: mean of the off-diagonal concordance / discordance entries.
  std::optional<double> concordance_threshold;
  std::optional<double> discordance_threshold;
};

struct ElectreResult {
  std::vector<std::vector<double>> concordance;
  std::vector<std::vector<double>> discordance;
  std::vector<std::vector<int>> dominance;  // dominance[a][b] = 1: a beats b
  std::vector<int> beats;
  std::vector<int> overcome;
  std::vector<std::size_t> ranking;  // best first
  double concordance_threshold = 0.0;
  double discordance_threshold = 0.0;
  std::vector<std::string> removed_criteria;  // zero-range columns
};

// Criteria are rescaled to [0, 1] with 1 the best value. C(a, b) is the weight
// of criteria where a is at least as good as b; D(a, b) the largest normalized
// amount by which b beats a. a outranks b when C >= c_hat and D <= d_hat; a
// dominates b when it outranks b and b does not outrank a.
inline ElectreResult electre(const DecisionMatrix& m, const ElectreOptions& opt = {}) {
  const std::size_t na = m.alternatives.size();
  if (na < 2) throw std::invalid_argument("Electre needs at least two alternatives");
  if (m.criteria.empty()) throw std::invalid_argument("Electre needs at least one criterion");
  if (m.values.size() != na) throw std::invalid_argument("decision matrix row count mismatch");
  for (const auto& row : m.values)
    if (row.size() != m.criteria.size()) throw std::invalid_argument("decision matrix column count mismatch");

  ElectreResult r;
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < m.criteria.size(); ++j) {
    if (!(m.criteria[j].weight > 0.0)) throw std::invalid_argument("criterion weights must be > 0");
    double lo = m.values[0][j], hi = lo;
    for (const auto& row : m.values) {
      lo = std::min(lo, row[j]);
      hi = std::max(hi, row[j]);
    }
    if (hi > lo)
      kept.push_back(j);
    else
      r.removed_criteria.push_back(m.criteria[j].name);
  }
  if (kept.empty()) throw std::invalid_argument("every criterion has zero range");

  double wsum = 0.0;
  for (std::size_t j : kept) wsum += m.criteria[j].weight;
  std::vector<double> w;
  std::vector<std::vector<double>> norm(na);
  for (std::size_t j : kept) {
    w.push_back(m.criteria[j].weight / wsum);
    double lo = m.values[0][j], hi = lo;
    for (const auto& row : m.values) {
      lo = std::min(lo, row[j]);
      hi = std::max(hi, row[j]);
    }
    for (std::size_t a = 0; a < na; ++a) {
      const double x = m.values[a][j];
      norm[a].push_back(m.criteria[j].direction == Direction::Minimize ? (hi - x) / (hi - lo) : (x - lo) / (hi - lo));
    }
  }

  r.concordance.assign(na, std::vector<double>(na, 0.0));
  r.discordance.assign(na, std::vector<double>(na, 0.0));
  double csum = 0.0, dsum = 0.0;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < na; ++b) {
      if (a == b) continue;
      double c = 0.0, d = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (norm[a][k] >= norm[b][k]) c += w[k];
        d = std::max(d, norm[b][k] - norm[a][k]);
      }
      r.concordance[a][b] = c;
      r.discordance[a][b] = d;
      csum += c;
      dsum += d;
    }
  const auto pairs = static_cast<double>(na * (na - 1));
  r.concordance_threshold = opt.concordance_threshold.value_or(csum / pairs);
  r.discordance_threshold = opt.discordance_threshold.value_or(dsum / pairs);

  auto outranks = [&](std::size_t a, std::size_t b) {
    return a != b && r.concordance[a][b] >= r.concordance_threshold &&
           r.discordance[a][b] <= r.discordance_threshold;
  };
  r.dominance.assign(na, std::vector<int>(na, 0));
  r.beats.assign(na, 0);
  r.overcome.assign(na, 0);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < na; ++b)
      if (outranks(a, b) && !outranks(b, a)) {
        r.dominance[a][b] = 1;
        ++r.beats[a];
        ++r.overcome[b];
      }

  r.ranking.resize(na);
  std::iota(r.ranking.begin(), r.ranking.end(), std::size_t{0});
  std::stable_sort(r.ranking.begin(), r.ranking.end(), [&](std::size_t a, std::size_t b) {
    const int na_ = r.beats[a] - r.overcome[a], nb_ = r.beats[b] - r.overcome[b];
    if (na_ != nb_) return na_ > nb_;
    return r.beats[a] > r.beats[b];
  });
  return r;
}

}  // namespace lto::stats
