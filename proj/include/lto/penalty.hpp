#pragma once

// Constraint-handling techniques turning pure fitness plus violation counts
// into the total fitness the GA minimizes.

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lto/violations.hpp"

namespace lto {

enum class ChtKind { Static, Dynamic, Annealing };
enum class Cooling { Alpha, Boltzmann, Cauchy, SquareRoot };

struct ChtConfig {
  ChtKind kind = ChtKind::Static;

  double bg_weight = 100.0;
  double rnw_weight = 50.0;

  double dynamic_c = 0.5;
  double dynamic_alpha = 2.0;
  double dynamic_beta = 2.0;

  double anneal_beta = 1.0;
  double initial_temperature = 150.0;
  Cooling cooling = Cooling::Cauchy;
  // Category weights applied inside the annealing exponent.
  double anneal_bg_weight = 2.0;
  double anneal_rnw_weight = 1.0;

  void validate() const {
    if (!(bg_weight >= 0.0) || !(rnw_weight >= 0.0)) throw std::invalid_argument("penalty weights must be >= 0");
    if (!(dynamic_c > 0.0)) throw std::invalid_argument("dynamic penalty C must be > 0");
    if (!(dynamic_beta > 0.0) || !(anneal_beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    if (!(initial_temperature > 0.0)) throw std::invalid_argument("initial temperature must be > 0");
    if (!(anneal_bg_weight >= 0.0) || !(anneal_rnw_weight >= 0.0))
      throw std::invalid_argument("annealing weights must be >= 0");
  }
};

inline double static_penalty(double pure, const ViolationCounts& v, double bg_weight, double rnw_weight) {
  return pure + bg_weight * static_cast<double>(v.bg()) + rnw_weight * static_cast<double>(v.rnw());
}

inline double dynamic_penalty_term(const ViolationCounts& v, double c, double alpha, double beta, int t) {
  if (t < 1) throw std::invalid_argument("generation must be >= 1");
  double sum = 0.0;
  for (long p : v.as_array())
    if (p != 0) sum += std::pow(static_cast<double>(p), beta);
  if (sum == 0.0) return 0.0;
  return std::pow(c * t, alpha) * sum;
}

inline double dynamic_penalty(double pure, const ViolationCounts& v, double c, double alpha, double beta, int t) {
  return pure + dynamic_penalty_term(v, c, alpha, beta, t);
}

inline double cooling_temperature(Cooling scheme, double t0, int t) {
  if (t < 1) throw std::invalid_argument("cooling schedule is defined for t >= 1");
  if (!(t0 > 0.0)) throw std::invalid_argument("initial temperature must be > 0");
  const double x = static_cast<double>(t);
  switch (scheme) {
    case Cooling::Alpha: return t0 * std::pow(0.98, x);
    case Cooling::Boltzmann: return t0 / (1.0 + std::log(x));
    case Cooling::Cauchy: return t0 / (1.0 + x);
    case Cooling::SquareRoot: return t0 / std::sqrt(x);
  }
  throw std::invalid_argument("unknown cooling scheme");
}

// Multiplier 2 - exp(-sum / T), in [1, 2).
inline double annealing_factor(double violation_sum, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
  return 2.0 - std::exp(-violation_sum / temperature);
}

inline double annealing_penalty(double pure, double violation_sum, double temperature) {
  return pure * annealing_factor(violation_sum, temperature);
}

// sum_j w_j * p_j^beta, with w_j the BG or RNW category weight of constraint j.
inline double annealing_violation_sum(const ViolationCounts& v, double beta, double bg_weight, double rnw_weight) {
  auto term = [beta](long p) { return p == 0 ? 0.0 : std::pow(static_cast<double>(p), beta); };
  return bg_weight * (term(v.bg01) + term(v.bg02) + term(v.bg03)) + rnw_weight * (term(v.rnw01) + term(v.rnw02));
}

inline double apply_cht(const ChtConfig& cfg, double pure, const ViolationCounts& v, int t) {
  switch (cfg.kind) {
    case ChtKind::Static: return static_penalty(pure, v, cfg.bg_weight, cfg.rnw_weight);
    case ChtKind::Dynamic:
      return dynamic_penalty(pure, v, cfg.dynamic_c, cfg.dynamic_alpha, cfg.dynamic_beta, t);
    case ChtKind::Annealing: {
      const double T = cooling_temperature(cfg.cooling, cfg.initial_temperature, t);
      return annealing_penalty(
          pure, annealing_violation_sum(v, cfg.anneal_beta, cfg.anneal_bg_weight, cfg.anneal_rnw_weight), T);
    }
  }
  throw std::invalid_argument("unknown CHT");
}

// The value traced per generation: the BG weight for SPM, (C t)^alpha for DPM,
// the temperature for annealing.
inline double penalty_factor(const ChtConfig& cfg, int t) {
  switch (cfg.kind) {
    case ChtKind::Static: return cfg.bg_weight;
    case ChtKind::Dynamic: return std::pow(cfg.dynamic_c * t, cfg.dynamic_alpha);
    case ChtKind::Annealing: return cooling_temperature(cfg.cooling, cfg.initial_temperature, t);
  }
  return 0.0;
}

inline std::string_view to_string(ChtKind k) {
  switch (k) {
    case ChtKind::Static: return "static";
    case ChtKind::Dynamic: return "dynamic";
    case ChtKind::Annealing: return "annealing";
  }
  return "?";
}

inline std::string_view to_string(Cooling c) {
  switch (c) {
    case Cooling::Alpha: return "alpha";
    case Cooling::Boltzmann: return "boltzmann";
    case Cooling::Cauchy: return "cauchy";
    case Cooling::SquareRoot: return "sqrt";
  }
  return "?";
}

inline ChtKind parse_cht_kind(std::string_view s) {
  if (s == "static" || s == "spm") return ChtKind::Static;
  if (s == "dynamic" || s == "dpm") return ChtKind::Dynamic;
  if (s == "annealing") return ChtKind::Annealing;
  throw std::invalid_argument("unknown CHT kind: " + std::string(s));
}

inline Cooling parse_cooling(std::string_view s) {
  if (s == "alpha") return Cooling::Alpha;
  if (s == "boltzmann") return Cooling::Boltzmann;
  if (s == "cauchy") return Cooling::Cauchy;
  if (s == "sqrt" || s == "square_root") return Cooling::SquareRoot;
  throw std::invalid_argument("unknown cooling scheme: " + std::string(s));
}

}  // namespace lto
