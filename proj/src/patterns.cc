// salign/patterns.cc

// Copyright 2026  The salign authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "salign/patterns.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "salign/parallel.h"

namespace salign {

namespace {

using nlohmann::json;

constexpr double kEps = 1e-12;  // floor for negative powers of the model

double beta_divergence_term(double y, double yhat, double beta) {
  if (beta == 2.0) {
    const double d = y - yhat;
    return 0.5 * d * d;
  }
  if (beta == 1.0) {
    double term = yhat - y;
    if (y > 0.0) term += y * std::log(y / std::max(yhat, kEps));
    return term;
  }
  const double yf = (beta < 1.0) ? std::max(y, kEps) : y;
  const double hf = (beta < 2.0) ? std::max(yhat, kEps) : yhat;
  return (std::pow(yf, beta) + (beta - 1.0) * std::pow(hf, beta) -
          beta * yf * std::pow(hf, beta - 1.0)) /
         (beta * (beta - 1.0));
}

// Multiplicative-update weights: yhat^(beta-2) * y and yhat^(beta-1).
void mu_weights(double y, double yhat, double beta, double* num, double* den) {
  if (beta == 2.0) {
    *num = y;
    *den = yhat;
  } else if (beta == 1.0) {
    *num = y / std::max(yhat, kEps);
    *den = 1.0;
  } else {
    const double hf = std::max(yhat, kEps);
    *num = y * std::pow(hf, beta - 2.0);
    *den = std::pow(hf, beta - 1.0);
  }
}

std::vector<double> basis_from_alphas(
    const std::vector<std::pair<NoteKey, double>>& alphas,
    const TemplateBank& bank) {
  std::vector<double> basis(bank.config().num_bins(), 0.0);
  for (const auto& [key, a] : alphas) {
    const NoteTemplate& t = bank.lookup(key);
    for (size_t f = 0; f < basis.size(); ++f) basis[f] += a * t.spectrum[f];
  }
  return basis;
}

}  // namespace

double UnitPattern::alpha_for(const NoteKey& key) const {
  for (const auto& [k, a] : alphas)
    if (k == key) return a;
  return 0.0;
}

TrainingRender render_unit(const ScoreUnit& unit, const TemplateBank& bank,
                           double duration_s, std::span<const double> envelope) {
  if (unit.is_silence())
    throw std::invalid_argument("render_unit: cannot render silence");
  const FrontendConfig& c = bank.config();
  const int T = static_cast<int>(duration_s * c.sample_rate / c.hop_size);
  if (T < 1) throw std::invalid_argument("render_unit: duration too short");
  if (!envelope.empty() && int(envelope.size()) != T)
    throw std::invalid_argument("render_unit: envelope length " +
                                std::to_string(envelope.size()) +
                                " != frame count " + std::to_string(T));

  const int F = c.num_bins();
  std::vector<double> base(F, 0.0);
  for (const NoteKey& key : unit.notes) {
    const NoteTemplate& t = bank.lookup(key);
    for (int f = 0; f < F; ++f) base[f] += t.spectrum[f];
  }

  TrainingRender r;
  r.unit_index = unit.index;
  r.num_frames = T;
  r.num_bins = F;
  r.frames.resize(size_t(T) * F);
  for (int tau = 0; tau < T; ++tau) {
    const double g = envelope.empty() ? 1.0 : envelope[tau];
    for (int f = 0; f < F; ++f) r.frames[size_t(tau) * F + f] = g * base[f];
  }
  r.gains.assign(envelope.begin(), envelope.end());
  return r;
}

UnitPattern fit_pattern(const TrainingRender& render, const ScoreUnit& unit,
                        const TemplateBank& bank, const FitOptions& options,
                        FitTrace* trace) {
  if (unit.is_silence())
    throw std::invalid_argument("fit_pattern: cannot fit a silence unit");
  const int F = render.num_bins;
  const int T = render.num_frames;
  const int n = static_cast<int>(unit.notes.size());
  if (F != bank.config().num_bins())
    throw std::invalid_argument("fit_pattern: render/bank bin count mismatch");

  bool any = false;
  for (double v : render.frames)
    if (v != 0.0) { any = true; break; }
  if (!any) throw std::invalid_argument("fit_pattern: all-zero render");

  // Template matrix columns in note order.
  std::vector<const double*> tmpl(n);
  for (int m = 0; m < n; ++m)
    tmpl[m] = bank.lookup(unit.notes[m]).spectrum.data();

  std::vector<double> alpha(n, 1.0 / n);
  std::vector<double> g(T, 1.0);
  std::vector<double> v(F, 0.0);  // composite spectrum, sum alpha * n
  auto recompute_v = [&] {
    std::fill(v.begin(), v.end(), 0.0);
    for (int m = 0; m < n; ++m)
      for (int f = 0; f < F; ++f) v[f] += alpha[m] * tmpl[m][f];
  };
  recompute_v();

  auto objective = [&] {
    double obj = 0.0;
    for (int tau = 0; tau < T; ++tau) {
      const double* y = render.frames.data() + size_t(tau) * F;
      for (int f = 0; f < F; ++f)
        obj += beta_divergence_term(y[f], g[tau] * v[f], options.beta);
    }
    return obj;
  };

  double obj_prev = objective();
  if (trace) trace->objective.push_back(obj_prev);

  std::vector<double> num(n), den(n);
  for (int iter = 0; iter < options.max_iters; ++iter) {
    // Amplitudes. d yhat / d alpha_m = g(tau) * n_m(f).
    std::fill(num.begin(), num.end(), 0.0);
    std::fill(den.begin(), den.end(), 0.0);
    for (int tau = 0; tau < T; ++tau) {
      const double* y = render.frames.data() + size_t(tau) * F;
      const double gt = g[tau];
      if (gt == 0.0) continue;
      for (int f = 0; f < F; ++f) {
        double wn, wd;
        mu_weights(y[f], gt * v[f], options.beta, &wn, &wd);
        for (int m = 0; m < n; ++m) {
          const double d = gt * tmpl[m][f];
          num[m] += d * wn;
          den[m] += d * wd;
        }
      }
    }
    for (int m = 0; m < n; ++m)
      if (den[m] > kEps) alpha[m] *= num[m] / den[m];
      else if (num[m] <= kEps) alpha[m] = 0.0;
    recompute_v();

    // Temporal activity. d yhat / d g(tau) = v(f).
    for (int tau = 0; tau < T; ++tau) {
      const double* y = render.frames.data() + size_t(tau) * F;
      double wnum = 0.0, wden = 0.0;
      for (int f = 0; f < F; ++f) {
        double wn, wd;
        mu_weights(y[f], g[tau] * v[f], options.beta, &wn, &wd);
        wnum += v[f] * wn;
        wden += v[f] * wd;
      }
      if (wden > kEps) g[tau] *= wnum / wden;
      else if (wnum <= kEps) g[tau] = 0.0;
    }

    const double obj = objective();
    if (trace) trace->objective.push_back(obj);
    if (obj > obj_prev + 1e-9 * (1.0 + obj_prev))
      throw std::logic_error("fit_pattern: objective increased (iteration " +
                             std::to_string(iter) + ")");
    const double improvement = obj_prev - obj;
    obj_prev = obj;
    if (improvement < options.tol * std::max(obj, kEps)) break;
  }

  // Resolve the bilinear scale: max_tau g == 1.
  const double gmax = *std::max_element(g.begin(), g.end());
  if (gmax > 0.0)
    for (double& a : alpha) a *= gmax;

  UnitPattern p;
  p.unit_index = unit.index;
  p.alphas.reserve(n);
  for (int m = 0; m < n; ++m) p.alphas.emplace_back(unit.notes[m], alpha[m]);

  recompute_v();  // composite at the final alpha scale
  for (int m = 0; m < n; ++m)
    for (int f = 0; f < F; ++f) ;  // v already includes the rescaled alphas? no
  // recompute_v used `alpha` after rescale, so v is current.
  double gain_sq = 0.0;
  for (double x : v) gain_sq += x * x;
  p.basis_gain = std::sqrt(gain_sq);
  p.basis = std::move(v);
  if (p.basis_gain > kEps) {
    for (double& x : p.basis) x /= p.basis_gain;
  } else {
    std::fill(p.basis.begin(), p.basis.end(), 0.0);
    p.degenerate = true;
  }
  return p;
}

std::vector<UnitPattern> build_all_patterns(const ScoreTimeline& timeline,
                                            const TemplateBank& bank,
                                            const TrainOptions& options) {
  const int K = timeline.size();
  std::vector<UnitPattern> patterns(K);
  parallel_for(K, options.threads, [&](size_t begin, size_t end) {
    for (size_t k = begin; k < end; ++k) {
      const ScoreUnit& unit = timeline.units[k];
      if (unit.is_silence()) {
        UnitPattern p;
        p.unit_index = unit.index;
        p.basis.assign(bank.config().num_bins(), 0.0);
        patterns[k] = std::move(p);
      } else {
        const TrainingRender r =
            render_unit(unit, bank, options.render_duration);
        patterns[k] = fit_pattern(r, unit, bank, options.fit);
      }
    }
  });
  return patterns;
}

UnitPattern make_pattern(int unit_index,
                         std::vector<std::pair<NoteKey, double>> alphas,
                         const TemplateBank& bank) {
  std::sort(alphas.begin(), alphas.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  UnitPattern p;
  p.unit_index = unit_index;
  p.alphas = std::move(alphas);
  p.basis = basis_from_alphas(p.alphas, bank);
  double gain_sq = 0.0;
  for (double x : p.basis) gain_sq += x * x;
  p.basis_gain = std::sqrt(gain_sq);
  if (p.basis_gain > kEps) {
    for (double& x : p.basis) x /= p.basis_gain;
  } else {
    std::fill(p.basis.begin(), p.basis.end(), 0.0);
    p.degenerate = !p.alphas.empty();
  }
  return p;
}

void save_patterns(const std::vector<UnitPattern>& patterns,
                   const std::string& path) {
  json doc;
  doc["units"] = json::array();
  for (const UnitPattern& p : patterns) {
    json unit;
    unit["k"] = p.unit_index;
    unit["alphas"] = json::array();
    for (const auto& [key, a] : p.alphas)
      unit["alphas"].push_back({{"pitch", key.pitch},
                                {"instrument", key.instrument},
                                {"alpha", a}});
    unit["basis"] = p.basis;
    doc["units"].push_back(std::move(unit));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("patterns: cannot write " + path);
  out << doc.dump() << "\n";
  if (!out) throw std::runtime_error("patterns: write failed: " + path);
}

std::vector<UnitPattern> load_patterns(const std::string& path,
                                       const TemplateBank& bank) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("patterns: cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("patterns: JSON parse error in " + path + ": " +
                                e.what());
  }
  if (!doc.contains("units"))
    throw std::invalid_argument("patterns: missing \"units\" in " + path);

  std::vector<UnitPattern> patterns;
  for (const json& unit : doc["units"]) {
    std::vector<std::pair<NoteKey, double>> alphas;
    for (const json& ja : unit.at("alphas"))
      alphas.emplace_back(NoteKey{ja.at("pitch").get<int>(),
                                  ja.at("instrument").get<std::string>()},
                          ja.at("alpha").get<double>());
    UnitPattern p = make_pattern(unit.at("k").get<int>(), std::move(alphas), bank);
    const auto stored = unit.at("basis").get<std::vector<double>>();
    if (stored.size() != p.basis.size())
      throw std::invalid_argument("patterns: basis length mismatch in " + path);
    for (size_t f = 0; f < stored.size(); ++f)
      if (std::abs(stored[f] - p.basis[f]) > 1e-6)
        throw std::invalid_argument(
            "patterns: stored basis disagrees with bank for unit k=" +
            std::to_string(p.unit_index) + " in " + path);
    patterns.push_back(std::move(p));
  }
  return patterns;
}

}  // namespace salign
