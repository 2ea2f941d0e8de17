#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bec1d/params.hpp"
#include "bec1d/polariton.hpp"
#include "bec1d/profile.hpp"

namespace bec1d {

enum class Method { Polariton, Maxwell, MaxwellForwardOnly };

Method parse_method(std::string_view name);
std::string to_string(Method method);

// Frequency held fixed by the Bragg scan: the displaced resonance
// omega0 - mu_c (detuning 0) or the bare omega0 (detuning +mu_c).
enum class ResonanceReference { Displaced, Bare };

struct RunConfig {
  ProfileKind profile = ProfileKind::Uniform;
  SimulationParams params;
  SolverOptions solver;
  Method method = Method::Polariton;
  int forward_order = 1;
  ResonanceReference resonance = ResonanceReference::Displaced;
  unsigned threads = 0;  // 0: hardware concurrency
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct SpectrumRow {
  double x = 0.0;  // detuning (gamma) or delta_q (k0)
  double T = 1.0;
  double R = 0.0;
  double L = 0.0;
  int cutoff = 0;  // 0 for closed-form methods
  bool converged = true;
};

// Spectrum rows are (detuning, T, R, L); Bragg rows are (delta_q, R) with T
// and L carried along.
struct SpectrumTable {
  std::string kind;  // "spectrum" or "bragg"
  Metadata metadata;
  std::vector<SpectrumRow> rows;

  bool all_converged() const;
  std::string meta(const std::string& key) const;
};

// Evenly spaced points including both ends.
std::vector<double> linspace(double lo, double hi, int n);

// One point with the configured method.
SpectrumRow evaluate_point(const RunConfig& config, double detuning);

SpectrumTable run_spectrum(const RunConfig& config, double dmin, double dmax,
                           int n_points);

// Reflection at resonance versus delta_q for the split profile.
SpectrumTable run_bragg_scan(const RunConfig& config, double dq_min,
                             double dq_max, int n_points);

// Polariton and reference (maxwell for uniform, forward-only otherwise) on
// the same detuning grid. The returned polariton table's metadata carries
// the max deviations.
std::pair<SpectrumTable, SpectrumTable> run_compare(const RunConfig& config,
                                                    double dmin, double dmax,
                                                    int n_points);

// Regenerates a table from the metadata it was written with.
SpectrumTable replay(const Metadata& metadata);

}  // namespace bec1d
