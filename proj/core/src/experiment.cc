// Copyright 2026 The deloc Authors
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

#include "deloc/experiment.h"

#include <openssl/sha.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "deloc/bounds.h"
#include "deloc/gaussian.h"
#include "deloc/hierarchy.h"
#include "deloc/metrics.h"
#include "deloc/potential_io.h"
#include "json.hpp"

namespace deloc {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<ExperimentType, const char*>, 7> kTypeNames = {{
    {ExperimentType::kGaussianScaling, "gaussian-scaling"},
    {ExperimentType::kBoundVsTruth, "bound-vs-truth"},
    {ExperimentType::kSubadditivity, "subadditivity"},
    {ExperimentType::kContinuousTime, "continuous-time"},
    {ExperimentType::kOnestepLinf, "onestep-linf"},
    {ExperimentType::kSamplerVsOracle, "sampler-vs-oracle"},
    {ExperimentType::kDelocalizationFailure, "delocalization-failure"},
}};

constexpr double kDimensionFreeSlope = 0.05;
constexpr double kDimensionFreeVariation = 0.05;
constexpr double kFailureGrowth = 2.0;
constexpr int kBatches = 10;

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t CellSeed(std::uint64_t seed, std::size_t index) {
  return SplitMix(seed ^ SplitMix(static_cast<std::uint64_t>(index) + 1));
}

std::string UtcNow() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string Fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

struct Spectrum {
  double alpha, beta;
};

Spectrum Extremes(const Eigen::MatrixXd& a) {
  const Eigen::VectorXd ev = SpdEigenvalues(a);
  return {ev.minCoeff(), ev.maxCoeff()};
}

GaussianLaw TargetLaw(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd cov = a.inverse();
  cov = 0.5 * (cov + cov.transpose());
  return GaussianLaw::Centered(std::move(cov));
}

// Smallest c with max_i |N_{k+1}(i)| <= c (1 + k^p) for every k.
double MeasuredPolynomialGrowth(const InteractionGraph& g, double p) {
  double c = 1.0;
  for (int i = 0; i < g.num_vertices(); ++i) {
    const auto chain = g.NeighborhoodChain(Subset::Singleton(i));
    const int last = static_cast<int>(chain.size()) - 1;
    for (int k = 0; k + 1 <= last; ++k) {
      c = std::max(c, static_cast<double>(chain[static_cast<std::size_t>(k + 1)].size()) /
                          (1.0 + std::pow(k, p)));
    }
  }
  return c;
}

struct Growth {
  double c, p;
};

Growth ResolveGrowth(const ExperimentConfig& cfg, const InteractionGraph& g) {
  const double p = cfg.growth_p.value_or(1.0);
  const double c = cfg.growth_c ? *cfg.growth_c : MeasuredPolynomialGrowth(g, p);
  GrowthCertificate cert;
  cert.c = c;
  cert.exponent = p;
  const GrowthReport rep = VerifyGrowth(g, cert);
  if (!rep.passed) {
    throw std::invalid_argument("growth certificate c=" + Fmt(c) + ", p=" + Fmt(p) +
                                " fails at vertex " + std::to_string(rep.vertex.value_or(-1)) +
                                ", k=" + std::to_string(rep.k.value_or(-1)));
  }
  return {c, p};
}

class RowSink {
 public:
  RowSink(std::string experiment, int n, double h) : experiment_(std::move(experiment)), n_(n), h_(h) {}

  ExperimentRow& Add(std::string metric, std::string subset, double value) {
    ExperimentRow r;
    r.experiment = experiment_;
    r.n = n_;
    r.h = h_;
    r.metric = std::move(metric);
    r.subset = std::move(subset);
    r.value = value;
    rows_.push_back(std::move(r));
    return rows_.back();
  }

  // value <= bound, counted toward acceptance only when the bound applies.
  ExperimentRow& AddBounded(std::string metric, std::string subset, double value, double se,
                            double bound, std::string theorem, bool applies, double slack = 0.0) {
    ExperimentRow& r = Add(std::move(metric), std::move(subset), value);
    r.se = se;
    r.bound = bound;
    r.theorem = std::move(theorem);
    if (applies) {
      r.valid = value <= bound + slack;
      r.acceptance = true;
    }
    return r;
  }

  std::vector<ExperimentRow> Take() { return std::move(rows_); }

 private:
  std::string experiment_;
  int n_;
  double h_;
  std::vector<ExperimentRow> rows_;
};

// Relative rounding allowance for comparisons of exact oracle values.
double Slack(double bound) { return 1e-12 * std::max(1.0, std::abs(bound)) + 1e-15; }

struct Cell {
  int n;
  double h;  // as configured (a fraction when h_relative)
  std::size_t h_index;
};

double StepCeiling(const ExperimentConfig& cfg, const Spectrum& s, const InteractionGraph& g) {
  if (cfg.type == ExperimentType::kBoundVsTruth) {
    const Growth gr = ResolveGrowth(cfg, g);
    const BoundReport r = SparsePolyConstants(s.alpha, s.beta, cfg.gamma, gr.c, gr.p);
    if (!r.outputs.h_star) throw std::invalid_argument("no step ceiling: " + r.reason);
    return *r.outputs.h_star;
  }
  return 1.0 / s.beta;
}

std::vector<ExperimentRow> GaussianScalingCell(const ExperimentConfig& cfg, const Eigen::MatrixXd& a,
                                               double h, std::uint64_t seed) {
  const int n = static_cast<int>(a.rows());
  RowSink sink(ToString(cfg.type), n, h);
  const Spectrum s = Extremes(a);
  const InteractionGraph g = GraphFromPrecision(a);
  const GaussianLaw pi = TargetLaw(a);
  const GaussianLaw pih = LmcStationaryLaw(a, h);
  const Growth gr = ResolveGrowth(cfg, g);
  const BoundReport rep = SparsePolyConstants(s.alpha, s.beta, cfg.gamma, gr.c, gr.p);
  const bool applies = rep.valid && h <= rep.outputs.h_star.value_or(0.0);

  for (const Subset& u : cfg.panel.Build(n, g, seed)) {
    const double w = W2SqGaussian(Marginal(pih, u), Marginal(pi, u));
    const double bound = 2.0 / s.alpha * rep.outputs.C.value_or(0.0) * h * u.size();
    sink.AddBounded("w2sq", u.ToString(), w, 0.0, bound, ToString(Theorem::kSparsePoly), applies,
                    Slack(bound));
  }
  double max_single = 0.0;
  for (int i = 0; i < n; ++i) {
    const Subset u = Subset::Singleton(i);
    max_single = std::max(max_single, W2SqGaussian(Marginal(pih, u), Marginal(pi, u)));
  }
  sink.Add("max-w2sq-singleton", "max_i {i}", max_single).se = 0.0;
  sink.Add("w2sq-full", "[n]", W2SqGaussian(pih, pi)).se = 0.0;
  return sink.Take();
}

std::vector<ExperimentRow> BoundVsTruthCell(const ExperimentConfig& cfg, const Eigen::MatrixXd& a,
                                            double h, std::uint64_t seed) {
  const int n = static_cast<int>(a.rows());
  RowSink sink(ToString(cfg.type), n, h);
  const Spectrum s = Extremes(a);
  const InteractionGraph g = GraphFromPrecision(a);
  const Growth gr = ResolveGrowth(cfg, g);
  const BoundReport rep = SparsePolyConstants(s.alpha, s.beta, cfg.gamma, gr.c, gr.p);
  if (!rep.outputs.C) throw std::invalid_argument("sparse-poly constants unavailable: " + rep.reason);
  const bool applies = rep.valid && h <= *rep.outputs.h_star;
  const GaussianLaw pi = TargetLaw(a);
  const GaussianLaw pih = LmcStationaryLaw(a, h);
  for (const Subset& u : cfg.panel.Build(n, g, seed)) {
    const GaussianLaw ph = Marginal(pih, u), p = Marginal(pi, u);
    const double kl = KlGaussian(ph, p);
    const double w = W2SqGaussian(ph, p);
    const double bound = *rep.outputs.C * h * u.size();
    sink.AddBounded("kl", u.ToString(), kl, 0.0, bound, ToString(Theorem::kSparsePoly), applies,
                    Slack(bound));
    const double talagrand = 2.0 / s.alpha * kl;
    sink.AddBounded("w2sq", u.ToString(), w, 0.0, talagrand, "talagrand", true, Slack(talagrand));
  }
  return sink.Take();
}

std::vector<ExperimentRow> SubadditivityCell(const ExperimentConfig& cfg, const Eigen::MatrixXd& a,
                                             double h, std::uint64_t seed) {
  const int n = static_cast<int>(a.rows());
  RowSink sink(ToString(cfg.type), n, h);
  const GaussianLaw pi = TargetLaw(a);
  const GaussianLaw pih = LmcStationaryLaw(a, h);
  std::vector<int> ks = cfg.k;
  if (ks.empty()) {
    for (int k = 1; k <= n; ++k) ks.push_back(k);
  }
  for (int k : ks) {
    if (k < 1 || k > n) continue;
    const SubadditivityRow row = SubadditivityGaussian(pih, pi, k, 512, seed);
    ExperimentRow& r = sink.Add("subadditivity", "k=" + std::to_string(k), row.average_marginal);
    r.se = 0.0;
    r.bound = row.scaled_full;
    r.theorem = "subadditivity";
    r.valid = row.holds;
    r.acceptance = true;
    if (k == n) {
      const double gap = std::abs(row.average_marginal - row.scaled_full);
      sink.AddBounded("subadditivity-equality", "k=n", gap, 0.0, 1e-10, "subadditivity", true);
    }
  }
  return sink.Take();
}

std::vector<ExperimentRow> ContinuousTimeCell(const ExperimentConfig& cfg, const Eigen::MatrixXd& a,
                                              std::uint64_t seed) {
  const int n = static_cast<int>(a.rows());
  RowSink sink(ToString(cfg.type), n, 0.0);
  const Spectrum s = Extremes(a);
  const InteractionGraph g = GraphFromPrecision(a);
  const GaussianLaw pi = TargetLaw(a);
  const GaussianLaw rho0 = GaussianLaw::Centered(cfg.initial_scale * pi.cov());
  const SubsetFunction h0(
      [&](const Subset& w) { return w.empty() ? 0.0 : KlGaussian(Marginal(rho0, w), Marginal(pi, w)); },
      true);
  const auto panel = cfg.panel.Build(n, g, seed);
  for (double t : cfg.t) {
    const GaussianLaw rho_t = OuLaw(a, rho0, t);
    for (double eps : cfg.epsilon) {
      const std::string metric = "kl[t=" + Fmt(t) + ";eps=" + Fmt(eps) + "]";
      for (const Subset& u : panel) {
        const double exact = KlGaussian(Marginal(rho_t, u), Marginal(pi, u));
        const BoundReport rep = ContinuousTimeBound(g, u, t, eps, s.alpha, s.beta, cfg.gamma, h0);
        const double bound = rep.outputs.bound_value.value_or(0.0);
        sink.AddBounded(metric, u.ToString(), exact, 0.0, bound, ToString(Theorem::kContinuousTime),
                        rep.valid, Slack(bound));
      }
    }
  }
  return sink.Take();
}

std::vector<ExperimentRow> OnestepCell(const ExperimentConfig& cfg, const Eigen::MatrixXd& a, double h,
                                       std::uint64_t seed) {
  const int n = static_cast<int>(a.rows());
  RowSink sink(ToString(cfg.type), n, h);
  const Spectrum s = Extremes(a);
  double alpha0 = 0.0;
  for (int i = 0; i < n; ++i) alpha0 = std::max(alpha0, a.row(i).cwiseAbs().sum() - std::abs(a(i, i)));
  const BoundReport rep = OnestepLinfBound(s.alpha, alpha0, s.beta, h, n, 0);
  if (!rep.outputs.bound_value) throw std::invalid_argument("one-step bound unavailable: " + rep.reason);
  const double full = *rep.outputs.bound_value;

  const GaussianLaw pi = TargetLaw(a);
  const GaussianLaw pih = LmcStationaryLaw(a, h);
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXd xa = SampleGaussian(pih, cfg.samples, rng);
  const Eigen::MatrixXd xb = SampleGaussian(pi, cfg.samples, rng);
  BootstrapOptions opts;
  opts.resamples = cfg.resamples;
  opts.seed = SplitMix(seed);
  const DistanceEstimate est = W2sqAssignment(xa, xb, GroundNorm::kLinf, opts);
  sink.AddBounded("w2sq-linf", "[n]", est.value, est.standard_error, full,
                  ToString(Theorem::kOnestepLinf), rep.valid, 3.0 * est.standard_error);
  sink.Add("alpha0", "[n]", alpha0);

  const InteractionGraph g = GraphFromPrecision(a);
  for (const Subset& u : cfg.panel.Build(n, g, seed)) {
    const double w = W2SqGaussian(Marginal(pih, u), Marginal(pi, u));
    const double bound = full * u.size();
    sink.AddBounded("w2sq", u.ToString(), w, 0.0, bound, ToString(Theorem::kOnestepLinf), rep.valid,
                    Slack(bound));
  }
  return sink.Take();
}

// Standard error of a pooled covariance entry from batch means over
// contiguous batches of every chain.
double BatchCovarianceSe(const SampleStore& store, const Eigen::VectorXd& mean, int i, int j) {
  const std::int64_t rows = store.rows_per_chain;
  const std::int64_t per = rows / kBatches;
  if (per < 2) return 0.0;
  std::vector<double> est;
  for (int c = 0; c < store.num_chains; ++c) {
    for (int b = 0; b < kBatches; ++b) {
      double acc = 0.0;
      for (std::int64_t r = 0; r < per; ++r) {
        const Eigen::Index row = static_cast<Eigen::Index>(c * rows + b * per + r);
        acc += (store.data(row, i) - mean(i)) * (store.data(row, j) - mean(j));
      }
      est.push_back(acc / static_cast<double>(per));
    }
  }
  double m = 0.0;
  for (double e : est) m += e;
  m /= static_cast<double>(est.size());
  double ss = 0.0;
  for (double e : est) ss += (e - m) * (e - m);
  const double var = ss / static_cast<double>(est.size() - 1);
  return std::sqrt(var / static_cast<double>(est.size()));
}

std::vector<ExperimentRow> SamplerCell(const ExperimentConfig& cfg, const Eigen::MatrixXd& a, double h,
                                       std::uint64_t seed) {
  const int n = static_cast<int>(a.rows());
  RowSink sink(ToString(cfg.type), n, h);
  const GaussianLaw pi = TargetLaw(a);
  const GaussianLaw pih = LmcStationaryLaw(a, h);
  SamplerConfig sc = cfg.sampler;
  sc.h = h;
  if (sc.seed == 0) sc.seed = seed;
  const SampleStore store = RunChain(GaussianPotential(a), sc, Eigen::VectorXd::Zero(n));
  for (const auto& w : store.warnings) sink.Add("warning", w, 0.0);

  const Eigen::Index m = store.data.rows();
  const Eigen::VectorXd mean = store.data.colwise().mean().transpose();
  const Eigen::MatrixXd centered = store.data.rowwise() - mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(m);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double se = BatchCovarianceSe(store, mean, i, j);
      const double oracle = pih.cov()(i, j);
      ExperimentRow& r = sink.Add("cov", Subset{i, j}.ToString(), cov(i, j));
      r.se = se;
      r.bound = oracle;
      r.theorem = "oracle";
      r.valid = std::abs(cov(i, j) - oracle) <= 4.0 * se;
      r.acceptance = true;
    }
  }

  // Oracle draws from the target: the sampler-vs-target distance estimates
  // the bias W2^2(pi_h^i, pi^i).
  std::mt19937_64 rng(SplitMix(seed));
  const Eigen::MatrixXd ref = SampleGaussian(pi, static_cast<int>(m), rng);
  BootstrapOptions opts;
  opts.resamples = cfg.resamples;
  const Eigen::Index half = m / 2;
  for (int i = 0; i < n; ++i) {
    const Subset u = Subset::Singleton(i);
    const double bures = W2SqGaussian(Marginal(pih, u), Marginal(pi, u));
    const double* xs = store.data.col(i).data();
    const double* ys = ref.col(i).data();
    opts.seed = SplitMix(seed + 1 + static_cast<std::uint64_t>(i));
    const auto whole = W2sq1d({xs, static_cast<std::size_t>(m)}, {ys, static_cast<std::size_t>(m)}, opts);
    const auto h1 = W2sq1d({xs, static_cast<std::size_t>(half)}, {ys, static_cast<std::size_t>(half)}, opts);
    const auto h2 = W2sq1d({xs + half, static_cast<std::size_t>(half)}, {ys + half, static_cast<std::size_t>(half)},
                           opts);
    const double w_half = 0.5 * (h1.value + h2.value);
    const double se_half = 0.5 * std::hypot(h1.standard_error, h2.standard_error);
    ExperimentRow& raw = sink.Add("w2sq-1d-raw", u.ToString(), whole.value);
    raw.se = whole.standard_error;
    raw.bound = bures;
    raw.theorem = "oracle";
    const double extrapolated = 2.0 * whole.value - w_half;
    const double se = std::hypot(2.0 * whole.standard_error, se_half);
    ExperimentRow& ex = sink.Add("w2sq-1d-extrapolated", u.ToString(), extrapolated);
    ex.se = se;
    ex.bound = bures;
    ex.theorem = "oracle";
    ex.valid = std::abs(extrapolated - bures) <= 3.0 * se;
    ex.acceptance = true;
  }
  return sink.Take();
}

double RelativeVariation(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0.0 ? (*hi - *lo) / *lo : INFINITY;
}

ExperimentRow SummaryRow(const std::string& experiment, double h, std::string metric, double value) {
  ExperimentRow r;
  r.experiment = experiment;
  r.h = h;
  r.subset = "across-n";
  r.metric = std::move(metric);
  r.value = value;
  r.theorem = "threshold";
  r.acceptance = true;
  return r;
}

void AppendScalingSummary(const std::string& experiment, const std::vector<ExperimentRow>& rows,
                          const std::vector<int>& dims, double h, std::vector<ExperimentRow>* out) {
  std::map<int, double> single, full;
  for (const auto& r : rows) {
    if (r.metric == "max-w2sq-singleton") single[r.n] = r.value;
    if (r.metric == "w2sq-full") full[r.n] = r.value;
  }
  if (single.size() < 2 || single.size() != dims.size()) return;
  std::vector<double> ns, ys, fs;
  for (const auto& [n, v] : single) {
    ns.push_back(n);
    ys.push_back(v);
    fs.push_back(full.at(n));
  }
  ExperimentRow var = SummaryRow(experiment, h, "relvar:max-w2sq-singleton", RelativeVariation(ys));
  var.bound = kDimensionFreeVariation;
  var.valid = var.value < kDimensionFreeVariation;
  out->push_back(var);
  if (ns.size() >= 3) {
    const ScalingFit fs_fit = FitLogLog(ns, fs);
    ExperimentRow sf = SummaryRow(experiment, h, "slope:w2sq-full", fs_fit.slope);
    sf.valid = std::abs(fs_fit.slope - 1.0) <= kDimensionFreeSlope;
    out->push_back(sf);
    const ScalingFit ss_fit = FitLogLog(ns, ys);
    ExperimentRow ss = SummaryRow(experiment, h, "slope:max-w2sq-singleton", ss_fit.slope);
    ss.valid = std::abs(ss_fit.slope) < kDimensionFreeSlope;
    out->push_back(ss);
  }
}

std::vector<double> JsonNumbers(const json& j, const char* key) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  if (j[key].is_number()) return {j[key].get<double>()};
  for (const auto& v : j[key]) out.push_back(v.get<double>());
  return out;
}

Eigen::MatrixXd JsonMatrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + ": expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[static_cast<std::size_t>(r)].size()) != cols) {
      throw std::invalid_argument(std::string(what) + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

void CheckKeys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
        allowed.end()) {
      throw std::invalid_argument(where + ": unknown key \"" + key + "\"");
    }
  }
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Shortest text that parses back to the same double.
std::string Num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string ToString(ExperimentType t) {
  for (const auto& [k, name] : kTypeNames) {
    if (k == t) return name;
  }
  return "?";
}

std::optional<ExperimentType> ParseExperimentType(const std::string& name) {
  for (const auto& [k, n] : kTypeNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

Eigen::MatrixXd TargetSpec::Precision(int n) const {
  if (family == Family::kTridiagonal) return TridiagonalPrecision(n, diag, off);
  if (matrix.rows() != n) {
    throw std::invalid_argument("target has fixed dimension " + std::to_string(matrix.rows()) +
                                ", requested n=" + std::to_string(n));
  }
  return matrix;
}

Eigen::MatrixXd PrecisionFromPotential(const StructuredPotential& pot) {
  const int n = pot.dimension();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& t : pot.terms()) {
    if (t.kind() != FactorKind::kQuadratic) {
      throw std::invalid_argument("potential has non-quadratic factor \"" + t.descriptor() +
                                  "\"; no Gaussian oracle");
    }
    const auto& s = t.support();
    for (std::size_t r = 0; r < s.size(); ++r) {
      for (std::size_t c = 0; c < s.size(); ++c) {
        a(s[r], s[c]) += t.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
  }
  return a;
}

InteractionGraph GraphFromPrecision(const Eigen::MatrixXd& a) {
  std::vector<std::pair<int, int>> edges;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      if (a(i, j) != 0.0 || a(j, i) != 0.0) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return InteractionGraph::FromEdges(static_cast<int>(a.rows()), edges);
}

std::vector<Subset> PanelSpec::Build(int n, const InteractionGraph& g, std::uint64_t seed) const {
  std::vector<Subset> out;
  switch (kind) {
    case Kind::kDefault:
      for (int i = 0; i < n; ++i) out.push_back(Subset::Singleton(i));
      for (const auto& [i, j] : g.Edges()) out.push_back(Subset{i, j});
      break;
    case Kind::kSingletons:
      out = SubsetsOfSize(n, 1);
      break;
    case Kind::kPairs:
      if (n >= 2) out = SubsetsOfSize(n, 2);
      break;
    case Kind::kRandomK:
      out = SubsetPanel(n, size, count, seed);
      break;
    case Kind::kExplicit:
      for (const auto& s : subsets) {
        for (int i : s) {
          if (i < 0 || i >= n) {
            throw std::invalid_argument("panel index " + std::to_string(i) + " outside [0, " +
                                        std::to_string(n) + ")");
          }
        }
        out.emplace_back(std::span<const int>(s));
      }
      break;
  }
  if (out.empty()) throw std::invalid_argument("subset panel is empty for n=" + std::to_string(n));
  return out;
}

Eigen::MatrixXd RotationSpec::Rotation(int n) const {
  Eigen::MatrixXd q;
  switch (kind) {
    case Kind::kIdentity:
      return Eigen::MatrixXd::Identity(n, n);
    case Kind::kAllOnes: {
      // Reflection swapping e_1 and the unit all-ones vector.
      Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
      v(0) -= 1.0;
      q = Eigen::MatrixXd::Identity(n, n);
      const double nv = v.squaredNorm();
      if (nv > 0.0) q -= 2.0 * v * v.transpose() / nv;
      break;
    }
    case Kind::kExplicit:
      if (matrix.rows() != n || matrix.cols() != n) {
        throw std::invalid_argument("rotation matrix is not " + std::to_string(n) + "x" + std::to_string(n));
      }
      q = matrix;
      break;
  }
  const double err = (q.transpose() * q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(err <= 1e-10)) throw std::invalid_argument("rotation is not orthogonal (|Q^T Q - I| = " + Fmt(err) + ")");
  return q;
}

Eigen::MatrixXd RotationSpec::Precision(int n) const {
  Eigen::VectorXd d = Eigen::VectorXd::Constant(n, strong);
  d(0) = weak;
  const Eigen::MatrixXd q = Rotation(n);
  Eigen::MatrixXd a = q * d.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

void ExperimentConfig::Validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("experiment config: " + what); };
  if (dimensions.empty()) fail("dimension sweep is empty");
  for (int n : dimensions) {
    if (n < 1) fail("dimensions must be positive");
  }
  if (type == ExperimentType::kContinuousTime) {
    if (t.empty()) fail("time sweep is empty");
    if (epsilon.empty()) fail("epsilon sweep is empty");
    for (double v : t) {
      if (!(v >= 0.0)) fail("times must be nonnegative");
    }
    for (double e : epsilon) {
      if (!(e > 0.0 && e < 1.0)) fail("epsilon must lie in (0, 1)");
    }
  } else {
    if (h.empty()) fail("h sweep is empty");
    for (double v : h) {
      if (!(v > 0.0)) fail("step sizes must be positive");
    }
  }
  if (target.family != TargetSpec::Family::kTridiagonal) {
    if (target.matrix.rows() != target.matrix.cols() || target.matrix.rows() == 0) fail("precision matrix must be square");
    for (int n : dimensions) {
      if (n != target.matrix.rows()) fail("dimensions must equal the fixed target size");
    }
  }
  switch (panel.kind) {
    case PanelSpec::Kind::kExplicit:
      if (panel.subsets.empty()) fail("subset panel is empty");
      for (const auto& s : panel.subsets) {
        if (s.empty()) fail("panel contains an empty subset");
      }
      break;
    case PanelSpec::Kind::kRandomK:
      if (panel.count < 1 || panel.size < 1) fail("random-k panel needs count >= 1 and size >= 1");
      for (int n : dimensions) {
        if (panel.size > n) fail("random-k size exceeds n");
      }
      break;
    default:
      break;
  }
  const bool empirical = type == ExperimentType::kSamplerVsOracle || type == ExperimentType::kOnestepLinf;
  if (empirical) {
    const int largest = panel.kind == PanelSpec::Kind::kRandomK ? panel.size
                        : panel.kind == PanelSpec::Kind::kExplicit
                            ? static_cast<int>(std::max_element(panel.subsets.begin(), panel.subsets.end(),
                                                                [](const auto& x, const auto& y) {
                                                                  return x.size() < y.size();
                                                                })->size())
                            : 2;
    if (largest > 4) fail("subset sizes above 4 are not supported for empirical metrics");
    if (samples < 2) fail("samples must be >= 2");
  }
  if (resamples < 0) fail("resamples must be >= 0");
  if (!(gamma > 0.0)) fail("gamma must be positive");
  if (growth_c && *growth_c < 1.0) fail("growth c must be >= 1");
  if (growth_p && *growth_p < 1.0) fail("growth p must be >= 1");
  if (!(initial_scale > 0.0)) fail("initial_scale must be positive");
  if (type == ExperimentType::kSamplerVsOracle) {
    SamplerConfig sc = sampler;
    sc.h = h.front();
    sc.Validate();
  }
  if (type == ExperimentType::kDelocalizationFailure) {
    if (!(rotation.weak > 0.0 && rotation.strong > 0.0)) fail("rotation diagonal must be positive");
    for (int n : dimensions) rotation.Rotation(n);
  }
  if (threads < 0) fail("threads must be >= 0");
}

ExperimentConfig ParseExperimentConfig(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("experiment config: expected an object");
  CheckKeys(j,
            {"experiment", "target", "potential", "dimensions", "h", "h_relative", "panel", "gamma",
             "growth", "epsilon", "t", "initial_scale", "k", "samples", "resamples", "sampler",
             "rotation", "seed", "threads", "output"},
            "experiment config");
  ExperimentConfig cfg;
  try {
    const auto name = j.at("experiment").get<std::string>();
    const auto type = ParseExperimentType(name);
    if (!type) throw std::invalid_argument("unknown experiment \"" + name + "\"");
    cfg.type = *type;

    if (j.contains("potential") && j.contains("target")) {
      throw std::invalid_argument("give either \"target\" or \"potential\"");
    }
    if (j.contains("potential")) {
      const json& p = j["potential"];
      const StructuredPotential pot =
          p.is_string() ? LoadPotentialFile(p.get<std::string>()) : ParsePotentialJson(p.dump());
      cfg.target.family = TargetSpec::Family::kPotential;
      cfg.target.matrix = PrecisionFromPotential(pot);
    }
    if (j.contains("target")) {
      const json& t = j["target"];
      CheckKeys(t, {"family", "diag", "off", "matrix", "spec"}, "target");
      const std::string fam = t.value("family", "tridiagonal");
      if (fam == "tridiagonal") {
        cfg.target.family = TargetSpec::Family::kTridiagonal;
        cfg.target.diag = t.value("diag", 2.0);
        cfg.target.off = t.value("off", -0.5);
      } else if (fam == "precision") {
        cfg.target.family = TargetSpec::Family::kPrecision;
        cfg.target.matrix = JsonMatrix(t.at("matrix"), "target.matrix");
      } else if (fam == "potential") {
        const json& p = t.at("spec");
        const StructuredPotential pot =
            p.is_string() ? LoadPotentialFile(p.get<std::string>()) : ParsePotentialJson(p.dump());
        cfg.target.family = TargetSpec::Family::kPotential;
        cfg.target.matrix = PrecisionFromPotential(pot);
      } else {
        throw std::invalid_argument("unknown target family \"" + fam + "\"");
      }
    }

    if (j.contains("dimensions")) {
      for (const auto& v : j["dimensions"]) cfg.dimensions.push_back(v.get<int>());
    } else if (cfg.target.family != TargetSpec::Family::kTridiagonal) {
      cfg.dimensions.push_back(static_cast<int>(cfg.target.matrix.rows()));
    }
    cfg.h = JsonNumbers(j, "h");
    cfg.h_relative = j.value("h_relative", false);

    if (j.contains("panel")) {
      const json& p = j["panel"];
      if (p.is_string()) {
        const auto s = p.get<std::string>();
        if (s == "default") cfg.panel.kind = PanelSpec::Kind::kDefault;
        else if (s == "all-singletons") cfg.panel.kind = PanelSpec::Kind::kSingletons;
        else if (s == "all-pairs") cfg.panel.kind = PanelSpec::Kind::kPairs;
        else throw std::invalid_argument("unknown panel \"" + s + "\"");
      } else if (p.contains("random-k")) {
        cfg.panel.kind = PanelSpec::Kind::kRandomK;
        cfg.panel.count = p["random-k"].at("count").get<int>();
        cfg.panel.size = p["random-k"].at("size").get<int>();
      } else if (p.contains("explicit")) {
        cfg.panel.kind = PanelSpec::Kind::kExplicit;
        for (const auto& s : p["explicit"]) cfg.panel.subsets.push_back(s.get<std::vector<int>>());
      } else {
        throw std::invalid_argument("panel must be a name, {\"random-k\": ...} or {\"explicit\": ...}");
      }
    }

    cfg.gamma = j.value("gamma", 1.0);
    if (j.contains("growth")) {
      CheckKeys(j["growth"], {"c", "p"}, "growth");
      if (j["growth"].contains("c")) cfg.growth_c = j["growth"]["c"].get<double>();
      if (j["growth"].contains("p")) cfg.growth_p = j["growth"]["p"].get<double>();
    }
    if (j.contains("epsilon")) cfg.epsilon = JsonNumbers(j, "epsilon");
    cfg.t = JsonNumbers(j, "t");
    cfg.initial_scale = j.value("initial_scale", 2.0);
    if (j.contains("k")) cfg.k = j["k"].get<std::vector<int>>();
    cfg.samples = j.value("samples", 2048);
    cfg.resamples = j.value("resamples", 20);
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.threads = j.value("threads", 0);
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();

    if (j.contains("sampler")) {
      const json& s = j["sampler"];
      CheckKeys(s, {"iterations", "chains", "burn_in", "thinning", "seed", "threads", "mode", "substeps"},
                "sampler");
      cfg.sampler.iterations = s.value("iterations", std::int64_t{1000});
      cfg.sampler.num_chains = s.value("chains", 1);
      if (s.contains("burn_in")) cfg.sampler.burn_in = s["burn_in"].get<std::int64_t>();
      cfg.sampler.thinning = s.value("thinning", 1);
      cfg.sampler.seed = s.value("seed", std::uint64_t{0});
      cfg.sampler.threads = s.value("threads", 0);
      cfg.sampler.substeps = s.value("substeps", 1);
      const std::string mode = s.value("mode", "lmc");
      if (mode == "lmc") cfg.sampler.mode = SamplerMode::kLmc;
      else if (mode == "langevin-reference") cfg.sampler.mode = SamplerMode::kLangevinReference;
      else throw std::invalid_argument("unknown sampler mode \"" + mode + "\"");
    }
    if (j.contains("rotation")) {
      const json& r = j["rotation"];
      CheckKeys(r, {"kind", "weak", "strong", "matrix"}, "rotation");
      const std::string kind = r.value("kind", "all-ones");
      if (kind == "identity") cfg.rotation.kind = RotationSpec::Kind::kIdentity;
      else if (kind == "all-ones") cfg.rotation.kind = RotationSpec::Kind::kAllOnes;
      else if (kind == "explicit") {
        cfg.rotation.kind = RotationSpec::Kind::kExplicit;
        cfg.rotation.matrix = JsonMatrix(r.at("matrix"), "rotation.matrix");
      } else {
        throw std::invalid_argument("unknown rotation kind \"" + kind + "\"");
      }
      cfg.rotation.weak = r.value("weak", 0.05);
      cfg.rotation.strong = r.value("strong", 4.0);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment config: ") + e.what());
  }
  cfg.source = j.dump();
  cfg.Validate();
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseExperimentConfig(ss.str());
}

int ExperimentReport::AcceptanceFailures() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const ExperimentRow& r) {
    return r.acceptance && r.valid.has_value() && !*r.valid;
  }));
}

ExperimentReport DelocalizationFailureDemo(const RotationSpec& rotation, double h,
                                           const std::vector<int>& dimensions) {
  if (dimensions.empty()) throw std::invalid_argument("DelocalizationFailureDemo: no dimensions");
  if (!(h > 0.0)) throw std::invalid_argument("DelocalizationFailureDemo: h must be positive");
  for (int n : dimensions) rotation.Rotation(n);

  ExperimentReport report;
  report.experiment = ToString(ExperimentType::kDelocalizationFailure);
  report.started = UtcNow();
  RotationSpec product = rotation;
  product.kind = RotationSpec::Kind::kIdentity;
  std::vector<double> rotated_max, product_max;
  for (int n : dimensions) {
    RowSink sink(report.experiment, n, h);
    using Variant = std::tuple<const char*, const RotationSpec*, std::vector<double>*>;
    for (const auto& [label, spec, sink_max] :
         {Variant{"rotated", &rotation, &rotated_max}, Variant{"product", &product, &product_max}}) {
      const Eigen::MatrixXd a = spec->Precision(n);
      const GaussianLaw pi = TargetLaw(a);
      const GaussianLaw pih = LmcStationaryLaw(a, h);
      double best = 0.0;
      for (int i = 0; i < n; ++i) {
        const Subset u = Subset::Singleton(i);
        const double w = W2SqGaussian(Marginal(pih, u), Marginal(pi, u));
        best = std::max(best, w);
        if (n <= 16) sink.Add(std::string(label) + ":w2sq", u.ToString(), w).se = 0.0;
      }
      sink_max->push_back(best);
      sink.Add(std::string(label) + ":max-w2sq-singleton", "max_i {i}", best).se = 0.0;
    }
    for (auto& r : sink.Take()) report.rows.push_back(std::move(r));
  }
  if (dimensions.size() >= 2) {
    const std::string exp = report.experiment;
    ExperimentRow pv = SummaryRow(exp, h, "product:relvar:max-w2sq-singleton", RelativeVariation(product_max));
    pv.bound = kDimensionFreeVariation;
    pv.valid = pv.value < kDimensionFreeVariation;
    report.rows.push_back(pv);
    if (rotation.kind == RotationSpec::Kind::kIdentity) {
      ExperimentRow rv = SummaryRow(exp, h, "rotated:relvar:max-w2sq-singleton", RelativeVariation(rotated_max));
      rv.bound = kDimensionFreeVariation;
      rv.valid = rv.value < kDimensionFreeVariation;
      report.rows.push_back(rv);
    } else {
      const double ratio = rotated_max.back() / rotated_max.front();
      ExperimentRow gr = SummaryRow(exp, h, "rotated:growth:max-w2sq-singleton", ratio);
      gr.bound = kFailureGrowth;
      gr.valid = ratio >= kFailureGrowth;
      report.rows.push_back(gr);
    }
  }
  report.finished = UtcNow();
  return report;
}

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  ExperimentReport report;
  report.experiment = ToString(config.type);
  report.config_json = config.source;
  report.config_hash = GitBlobHash(config.source);
  report.seed = config.seed;
  report.started = UtcNow();

  if (config.type == ExperimentType::kDelocalizationFailure) {
    for (double h : config.h) {
      try {
        auto part = DelocalizationFailureDemo(config.rotation, h, config.dimensions);
        for (auto& r : part.rows) report.rows.push_back(std::move(r));
      } catch (const std::exception& e) {
        ExperimentRow r;
        r.experiment = report.experiment;
        r.h = h;
        r.metric = "error";
        r.error = e.what();
        r.valid = false;
        r.acceptance = true;
        report.rows.push_back(std::move(r));
      }
    }
    report.finished = UtcNow();
    return report;
  }

  std::vector<Cell> cells;
  const std::vector<double> hs = config.type == ExperimentType::kContinuousTime
                                     ? std::vector<double>{0.0}
                                     : config.h;
  for (int n : config.dimensions) {
    for (std::size_t hi = 0; hi < hs.size(); ++hi) cells.push_back({n, hs[hi], hi});
  }

  std::vector<std::vector<ExperimentRow>> results(cells.size());
  auto run_cell = [&](std::size_t idx) {
    const Cell& cell = cells[idx];
    const std::uint64_t seed = CellSeed(config.seed, idx);
    double h = cell.h;
    try {
      const Eigen::MatrixXd a = config.target.Precision(cell.n);
      if (config.h_relative && config.type != ExperimentType::kContinuousTime) {
        h *= StepCeiling(config, Extremes(a), GraphFromPrecision(a));
      }
      switch (config.type) {
        case ExperimentType::kGaussianScaling: results[idx] = GaussianScalingCell(config, a, h, seed); break;
        case ExperimentType::kBoundVsTruth: results[idx] = BoundVsTruthCell(config, a, h, seed); break;
        case ExperimentType::kSubadditivity: results[idx] = SubadditivityCell(config, a, h, seed); break;
        case ExperimentType::kContinuousTime: results[idx] = ContinuousTimeCell(config, a, seed); break;
        case ExperimentType::kOnestepLinf: results[idx] = OnestepCell(config, a, h, seed); break;
        case ExperimentType::kSamplerVsOracle: results[idx] = SamplerCell(config, a, h, seed); break;
        case ExperimentType::kDelocalizationFailure: break;
      }
    } catch (const std::exception& e) {
      ExperimentRow r;
      r.experiment = report.experiment;
      r.n = cell.n;
      r.h = h;
      r.metric = "error";
      r.error = e.what();
      r.valid = false;
      r.acceptance = true;
      results[idx] = {r};
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(cells.size(), config.threads > 0 ? static_cast<std::size_t>(config.threads) : hw);
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  std::vector<ExperimentRow> summary;
  if (config.type == ExperimentType::kGaussianScaling) {
    for (std::size_t hi = 0; hi < hs.size(); ++hi) {
      std::vector<ExperimentRow> slice;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].h_index == hi) slice.insert(slice.end(), results[i].begin(), results[i].end());
      }
      AppendScalingSummary(report.experiment, slice, config.dimensions, hs[hi], &summary);
    }
  }
  for (auto& part : results) {
    for (auto& r : part) report.rows.push_back(std::move(r));
  }
  for (auto& r : summary) report.rows.push_back(std::move(r));
  report.finished = UtcNow();
  return report;
}

ScalingFit FitScaling(const ExperimentReport& report, const std::string& metric, Predictor predictor,
                      std::optional<double> at_h, std::optional<int> at_n) {
  std::vector<double> xs, ys;
  for (const auto& r : report.rows) {
    if (r.metric != metric || !r.error.empty()) continue;
    if (at_h && r.h != *at_h) continue;
    if (at_n && r.n != *at_n) continue;
    double x = 0.0;
    switch (predictor) {
      case Predictor::kH: x = r.h; break;
      case Predictor::kN: x = r.n; break;
      case Predictor::kUsize: {
        // "{0 1 2}" -> 3
        if (r.subset.size() < 2 || r.subset.front() != '{') {
          throw std::invalid_argument("FitScaling: row subset \"" + r.subset + "\" has no size");
        }
        std::istringstream is(r.subset.substr(1, r.subset.size() - 2));
        int v, count = 0;
        while (is >> v) ++count;
        x = count;
        break;
      }
    }
    xs.push_back(x);
    ys.push_back(r.value);
  }
  return FitLogLog(xs, ys);
}

void WriteReportCsv(const ExperimentReport& report, std::ostream& os) {
  os << "experiment,n,h,subset,metric,value,se,bound,theorem,valid\n";
  for (const auto& r : report.rows) {
    const std::string metric = r.error.empty() ? r.metric : r.metric + ": " + r.error;
    os << CsvField(r.experiment) << ',' << r.n << ',' << Num(r.h) << ',' << CsvField(r.subset) << ','
       << CsvField(metric) << ',' << Num(r.value) << ',' << (r.se ? Num(*r.se) : "") << ','
       << (r.bound ? Num(*r.bound) : "") << ',' << CsvField(r.theorem) << ','
       << (r.valid ? (*r.valid ? "true" : "false") : "") << '\n';
  }
}

std::string ReportSidecarJson(const ExperimentReport& report) {
  json config = report.config_json.empty() ? json(nullptr) : json::parse(report.config_json);
  json j = {
      {"experiment", report.experiment},
      {"config_hash", report.config_hash},
      {"config", config},
      {"seed", report.seed},
      {"started", report.started},
      {"finished", report.finished},
      {"rows", report.rows.size()},
      {"acceptance_failures", report.AcceptanceFailures()},
      {"environment",
       {{"compiler", __VERSION__},
        {"cplusplus", static_cast<long>(__cplusplus)},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"hardware_threads", std::thread::hardware_concurrency()}}},
  };
  return j.dump(2);
}

std::vector<std::filesystem::path> WriteGnuplotFiles(const ExperimentReport& report,
                                                     const std::filesystem::path& prefix) {
  std::map<std::string, std::vector<const ExperimentRow*>> by_metric;
  for (const auto& r : report.rows) {
    if (r.error.empty()) by_metric[r.metric].push_back(&r);
  }
  std::vector<std::filesystem::path> written;
  for (const auto& [metric, rows] : by_metric) {
    std::string safe = metric;
    for (char& c : safe) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    }
    std::filesystem::path path = prefix;
    path += "." + safe + ".dat";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# " << report.experiment << " " << metric << "\n# n h value se bound subset\n";
    for (const ExperimentRow* r : rows) {
      out << r->n << ' ' << Num(r->h) << ' ' << Num(r->value) << ' ' << (r->se ? Num(*r->se) : "nan") << ' '
          << (r->bound ? Num(*r->bound) : "nan") << " \"" << r->subset << "\"\n";
    }
    written.push_back(path);
  }
  return written;
}

std::string GitBlobHash(const std::string& text) {
  std::string blob = "blob " + std::to_string(text.size());
  blob.push_back('\0');
  blob += text;
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(blob.data()), blob.size(), digest);
  std::ostringstream os;
  for (unsigned char c : digest) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c);
  return os.str();
}

}  // namespace deloc
