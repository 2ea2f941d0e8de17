#include "bec1d/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "bec1d/maxwell.hpp"
#include "bec1d/permittivity.hpp"
#include "bec1d/table_io.hpp"

namespace bec1d {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SpectrumRow polariton_row(const OrderParameterProfile& profile,
                          double detuning, const RunConfig& config) {
  SpectrumRow row;
  row.x = detuning;
  auto fill = [&](const ConvergedCoefficients& c) {
    row.T = c.coefficients.T;
    row.R = c.coefficients.R;
    row.L = c.coefficients.L_loss;
    row.cutoff = c.cutoff;
    row.converged = c.converged;
  };
  try {
    fill(converge(profile, detuning, config.params, config.solver));
  } catch (const ConvergenceError& e) {
    fill(e.last);
    row.converged = false;
  } catch (const SingularSystemError& e) {
    row.T = row.R = row.L = kNaN;
    row.cutoff = e.cutoff;
    row.converged = false;
  }
  return row;
}

SpectrumRow evaluate(const RunConfig& config,
                     const OrderParameterProfile& profile, double detuning) {
  switch (config.method) {
    case Method::Polariton:
      return polariton_row(profile, detuning, config);
    case Method::Maxwell: {
      if (profile.kind() != ProfileKind::Uniform)
        throw InvalidParameter("maxwell method needs the uniform profile");
      const Permittivity eps = solve_epsilon(detuning, config.params.density);
      const SlabResponse s = maxwell_slab(detuning, config.params, eps);
      return {detuning, s.T, s.R, 1.0 - s.T - s.R, 0, true};
    }
    case Method::MaxwellForwardOnly: {
      const SlabResponse s = forward_only_slab(detuning, config.params,
                                               profile, config.forward_order);
      return {detuning, s.T, s.R, 1.0 - s.T - s.R, 0, true};
    }
  }
  throw InvalidParameter("unknown method");
}

unsigned worker_count(const RunConfig& config, size_t jobs) {
  unsigned n = config.threads ? config.threads
                              : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<size_t>(n, std::max<size_t>(jobs, 1)));
}

// Runs job(i) for i in [0, n) on a pool; results land at their own index.
template <typename Job>
void parallel_for(size_t n, unsigned workers, Job job) {
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (size_t i = next++; i < n && !failed; i = next++) {
      try {
        job(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Metadata config_metadata(const RunConfig& config) {
  const SimulationParams& p = config.params;
  Metadata m{
      {"profile", to_string(config.profile)},
      {"method", to_string(config.method)},
      {"density", format_double(p.density)},
      {"length", format_double(p.slab_depth)},
      {"mu_c", format_double(p.mu_c)},
      {"recoil", format_double(p.recoil)},
      {"resonance_ratio", format_double(p.resonance_ratio)},
      {"delta_q", format_double(p.delta_q)},
      {"cutoff", config.solver.cutoff ? std::to_string(*config.solver.cutoff)
                                      : std::string("auto")},
      {"margin", format_double(config.solver.margin)},
      {"tol", format_double(config.solver.tol)},
      {"max_doublings", std::to_string(config.solver.max_doublings)},
      {"far_mode_closure", config.solver.far_mode_closure ? "on" : "off"},
      {"forward_order", std::to_string(config.forward_order)},
      {"resonance", config.resonance == ResonanceReference::Displaced
                        ? "displaced"
                        : "bare"},
  };
  return m;
}

void check_sweep(double lo, double hi, int n) {
  if (n < 2) throw InvalidParameter("points must be >= 2");
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw InvalidParameter("sweep range must satisfy min < max");
}

double parse_number(const std::string& s) {
  size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw InvalidParameter("bad number in metadata: " + s);
  return v;
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "polariton") return Method::Polariton;
  if (name == "maxwell") return Method::Maxwell;
  if (name == "maxwell-forward-only") return Method::MaxwellForwardOnly;
  throw InvalidParameter("unknown method: " + std::string(name));
}

std::string to_string(Method method) {
  switch (method) {
    case Method::Polariton: return "polariton";
    case Method::Maxwell: return "maxwell";
    case Method::MaxwellForwardOnly: return "maxwell-forward-only";
  }
  return "unknown";
}

bool SpectrumTable::all_converged() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SpectrumRow& r) { return r.converged; });
}

std::string SpectrumTable::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  throw std::out_of_range("missing metadata key: " + key);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i)
    x[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  return x;
}

SpectrumRow evaluate_point(const RunConfig& config, double detuning) {
  validate(config.params);
  return evaluate(config, make_profile(config.profile, config.params),
                  detuning);
}

SpectrumTable run_spectrum(const RunConfig& config, double dmin, double dmax,
                           int n_points) {
  validate(config.params);
  check_sweep(dmin, dmax, n_points);
  if (config.method == Method::Maxwell &&
      config.profile != ProfileKind::Uniform)
    throw InvalidParameter("maxwell method needs the uniform profile");
  const OrderParameterProfile profile =
      make_profile(config.profile, config.params);
  const std::vector<double> detunings = linspace(dmin, dmax, n_points);

  SpectrumTable table;
  table.kind = "spectrum";
  table.metadata = {{"kind", "spectrum"}};
  for (auto& kv : config_metadata(config)) table.metadata.push_back(kv);
  table.metadata.push_back({"dmin", format_double(dmin)});
  table.metadata.push_back({"dmax", format_double(dmax)});
  table.metadata.push_back({"points", std::to_string(n_points)});

  table.rows.resize(detunings.size());
  parallel_for(detunings.size(), worker_count(config, detunings.size()),
               [&](size_t i) {
                 table.rows[i] = evaluate(config, profile, detunings[i]);
               });
  return table;
}

SpectrumTable run_bragg_scan(const RunConfig& config, double dq_min,
                             double dq_max, int n_points) {
  validate(config.params);
  check_sweep(dq_min, dq_max, n_points);
  if (dq_min < 0.0) throw InvalidParameter("delta_q must be >= 0");
  const std::vector<double> dqs = linspace(dq_min, dq_max, n_points);
  const double detuning = config.resonance == ResonanceReference::Displaced
                              ? 0.0
                              : config.params.mu_c;
  RunConfig split = config;
  split.profile = ProfileKind::Split;
  split.method = Method::Polariton;

  SpectrumTable table;
  table.kind = "bragg";
  table.metadata = {{"kind", "bragg"}};
  for (auto& kv : config_metadata(split)) table.metadata.push_back(kv);
  table.metadata.push_back({"detuning", format_double(detuning)});
  table.metadata.push_back({"dqmin", format_double(dq_min)});
  table.metadata.push_back({"dqmax", format_double(dq_max)});
  table.metadata.push_back({"points", std::to_string(n_points)});

  table.rows.resize(dqs.size());
  parallel_for(dqs.size(), worker_count(config, dqs.size()), [&](size_t i) {
    SimulationParams p = split.params;
    p.delta_q = dqs[i];
    RunConfig point = split;
    point.params = p;
    SpectrumRow row =
        evaluate(point, make_profile(ProfileKind::Split, p), detuning);
    row.x = dqs[i];
    table.rows[i] = row;
  });
  return table;
}

std::pair<SpectrumTable, SpectrumTable> run_compare(const RunConfig& config,
                                                    double dmin, double dmax,
                                                    int n_points) {
  RunConfig pol = config;
  pol.method = Method::Polariton;
  RunConfig ref = config;
  ref.method = config.profile == ProfileKind::Uniform
                   ? Method::Maxwell
                   : Method::MaxwellForwardOnly;
  SpectrumTable a = run_spectrum(pol, dmin, dmax, n_points);
  SpectrumTable b = run_spectrum(ref, dmin, dmax, n_points);
  double dT = 0.0, dR = 0.0;
  for (size_t i = 0; i < a.rows.size(); ++i) {
    dT = std::max(dT, std::abs(a.rows[i].T - b.rows[i].T));
    dR = std::max(dR, std::abs(a.rows[i].R - b.rows[i].R));
  }
  a.metadata.push_back({"reference", to_string(ref.method)});
  a.metadata.push_back({"max_dev_T", format_double(dT)});
  a.metadata.push_back({"max_dev_R", format_double(dR)});
  return {std::move(a), std::move(b)};
}

SpectrumTable replay(const Metadata& metadata) {
  std::map<std::string, std::string> m(metadata.begin(), metadata.end());
  auto get = [&](const std::string& key) {
    auto it = m.find(key);
    if (it == m.end())
      throw InvalidParameter("metadata lacks key: " + key);
    return it->second;
  };
  RunConfig config;
  config.profile = parse_profile_kind(get("profile"));
  config.method = parse_method(get("method"));
  config.params.density = parse_number(get("density"));
  config.params.slab_depth = parse_number(get("length"));
  config.params.mu_c = parse_number(get("mu_c"));
  config.params.recoil = parse_number(get("recoil"));
  config.params.resonance_ratio = parse_number(get("resonance_ratio"));
  config.params.delta_q = parse_number(get("delta_q"));
  const std::string cutoff = get("cutoff");
  if (cutoff != "auto") config.solver.cutoff = std::stoi(cutoff);
  config.solver.margin = parse_number(get("margin"));
  config.solver.tol = parse_number(get("tol"));
  config.solver.max_doublings = std::stoi(get("max_doublings"));
  config.solver.far_mode_closure = get("far_mode_closure") == "on";
  config.forward_order = std::stoi(get("forward_order"));
  config.resonance = get("resonance") == "bare" ? ResonanceReference::Bare
                                                : ResonanceReference::Displaced;
  const int points = std::stoi(get("points"));
  if (get("kind") == "bragg")
    return run_bragg_scan(config, parse_number(get("dqmin")),
                          parse_number(get("dqmax")), points);
  return run_spectrum(config, parse_number(get("dmin")),
                      parse_number(get("dmax")), points);
}

}  // namespace bec1d
