// bec1d: spectra, Bragg scans, permittivity and dispersion tables.
//
// Exit codes: 0 success, 2 invalid parameters, 3 a row failed to converge.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bec1d/dispersion.hpp"
#include "bec1d/permittivity.hpp"
#include "bec1d/spectra.hpp"
#include "bec1d/table_io.hpp"

namespace {

using namespace bec1d;

constexpr int kExitInvalid = 2;
constexpr int kExitNotConverged = 3;

struct Options {
  std::string profile = "uniform";
  std::string method = "polariton";
  std::string cutoff = "auto";
  std::string format = "csv";
  std::string resonance = "displaced";
  std::string out;
  SimulationParams params;
  SolverOptions solver;
  int forward_order = 1;
  unsigned threads = 0;
  bool no_closure = false;

  double dmin = -4.0, dmax = 4.0;
  int points = 401;
  double dqmin = 0.25, dqmax = 1.25;
  int bragg_points = 51;
  double pmin = 0.0, pmax = 2.0;
  int dispersion_points = 201;
};

RunConfig make_config(const Options& o) {
  RunConfig c;
  c.profile = parse_profile_kind(o.profile);
  c.params = o.params;
  validate(c.params);
  c.solver = o.solver;
  c.solver.far_mode_closure = !o.no_closure;
  if (o.cutoff == "auto") {
    c.solver.cutoff.reset();
  } else {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(o.cutoff, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != o.cutoff.size() || n < 1)
      throw InvalidParameter("--cutoff must be 'auto' or a positive integer");
    c.solver.cutoff = n;
  }
  c.method = parse_method(o.method);
  c.forward_order = o.forward_order;
  if (o.resonance == "displaced")
    c.resonance = ResonanceReference::Displaced;
  else if (o.resonance == "bare")
    c.resonance = ResonanceReference::Bare;
  else
    throw InvalidParameter("--resonance must be 'displaced' or 'bare'");
  c.threads = o.threads;
  if (o.format != "csv" && o.format != "json")
    throw InvalidParameter("--format must be 'csv' or 'json'");
  return c;
}

void check_range(double lo, double hi, int n) {
  if (n < 2) throw InvalidParameter("--points must be >= 2");
  if (!(lo < hi)) throw InvalidParameter("sweep range must satisfy min < max");
}

// Output goes to --out if given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidParameter("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit(const Options& o, const SpectrumTable& table) {
  Sink sink(o.out);
  if (o.format == "json")
    write_json(sink.stream(), table);
  else
    write_csv(sink.stream(), table);
}

// Small generic table for the epsilon and dispersion subcommands.
struct PlainTable {
  Metadata metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void emit(const Options& o, const PlainTable& table) {
  Sink sink(o.out);
  std::ostream& out = sink.stream();
  if (o.format == "json") {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.metadata) meta[k] = v;
    j["metadata"] = meta;
    j["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      nlohmann::ordered_json row;
      for (std::size_t i = 0; i < r.size(); ++i) row[table.columns[i]] = r[i];
      rows.push_back(row);
    }
    j["rows"] = rows;
    out << j.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : table.metadata) out << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      out << (i ? "," : "") << format_double(r[i]);
    out << '\n';
  }
}

int run_epsilon(const Options& o) {
  const RunConfig c = make_config(o);
  check_range(o.dmin, o.dmax, o.points);
  PlainTable t;
  t.metadata = {{"kind", "epsilon"},
                {"density", format_double(c.params.density)},
                {"mu_c", format_double(c.params.mu_c)},
                {"dmin", format_double(o.dmin)},
                {"dmax", format_double(o.dmax)},
                {"points", std::to_string(o.points)}};
  t.columns = {"delta", "eps_re", "eps_im", "sqrt_eps_re", "sqrt_eps_im"};
  for (double d : linspace(o.dmin, o.dmax, o.points)) {
    const Permittivity e = solve_epsilon(d, c.params.density, c.params.mu_c);
    t.rows.push_back({d, e.epsilon.real(), e.epsilon.imag(),
                      e.sqrt_epsilon.real(), e.sqrt_epsilon.imag()});
  }
  emit(o, t);
  return 0;
}

int run_dispersion(const Options& o) {
  const RunConfig c = make_config(o);
  if (o.pmin < 0.0) throw InvalidParameter("--pmin must be >= 0");
  check_range(o.pmin, o.pmax, o.dispersion_points);
  PlainTable t;
  t.metadata = {{"kind", "dispersion"},
                {"density", format_double(c.params.density)},
                {"recoil", format_double(c.params.recoil)},
                {"resonance_ratio", format_double(c.params.resonance_ratio)},
                {"pmin", format_double(o.pmin)},
                {"pmax", format_double(o.pmax)},
                {"points", std::to_string(o.dispersion_points)}};
  t.columns = {"p", "photon_delta", "atomic_delta", "pole_re", "pole_im"};
  for (double p : linspace(o.pmin, o.pmax, o.dispersion_points)) {
    const double photon = photon_branch_detuning(p, c.params.density, c.params);
    const double atomic = atomic_branch_detuning(p, c.params.density, c.params);
    const Complex pole =
        transverse_photon_pole(photon, c.params.density, c.params);
    t.rows.push_back({p, photon, atomic, pole.real(), pole.imag()});
  }
  emit(o, t);
  return 0;
}

int run_table(const Options& o, const SpectrumTable& table) {
  emit(o, table);
  return table.all_converged() ? 0 : kExitNotConverged;
}

int run_compare(const Options& o) {
  RunConfig c = make_config(o);
  c.method = Method::Polariton;
  const auto [polariton, reference] = run_compare(c, o.dmin, o.dmax, o.points);
  Sink sink(o.out);
  std::ostream& out = sink.stream();
  if (o.format == "json") {
    std::ostringstream a, b;
    write_json(a, polariton);
    write_json(b, reference);
    nlohmann::ordered_json j;
    j["max_dev_T"] = std::stod(polariton.meta("max_dev_T"));
    j["max_dev_R"] = std::stod(polariton.meta("max_dev_R"));
    j["polariton"] = nlohmann::ordered_json::parse(a.str());
    j["reference"] = nlohmann::ordered_json::parse(b.str());
    out << j.dump(2) << '\n';
  } else {
    // Two CSV blocks separated by a blank line.
    write_csv(out, polariton);
    out << '\n';
    write_csv(out, reference);
  }
  std::cerr << "max |dT| = " << polariton.meta("max_dev_T")
            << ", max |dR| = " << polariton.meta("max_dev_R") << '\n';
  return polariton.all_converged() ? 0 : kExitNotConverged;
}

void add_model_options(CLI::App& app, Options& o) {
  app.add_option("--profile", o.profile, "uniform | cosine | split")
      ->check(CLI::IsMember({"uniform", "cosine", "split"}));
  app.add_option("--density", o.params.density, "n0 in units of k0^3");
  app.add_option("--length", o.params.slab_depth, "slab depth in lambda0");
  app.add_option("--mu-c", o.params.mu_c, "chemical potential (gamma)");
  app.add_option("--recoil", o.params.recoil, "hbar k0^2 / 2m (gamma)");
  app.add_option("--resonance-ratio", o.params.resonance_ratio,
                 "omega0 / gamma");
  app.add_option("--delta-q", o.params.delta_q, "fragment wavenumber (k0)");
  app.add_option("--cutoff", o.cutoff, "auto or N (modes -N..N)");
  app.add_option("--tol", o.solver.tol, "cutoff convergence tolerance");
  app.add_option("--margin", o.solver.margin, "automatic cutoff margin");
  app.add_option("--max-doublings", o.solver.max_doublings,
                 "cutoff doublings before giving up");
  app.add_flag("--no-closure", o.no_closure,
               "truncate the far modes instead of closing them");
  app.add_option("--method", o.method,
                 "polariton | maxwell | maxwell-forward-only");
  app.add_option("--forward-order", o.forward_order,
                 "Taylor order of the forward-only phase");
  app.add_option("--resonance", o.resonance,
                 "Bragg scan frequency: displaced | bare");
  app.add_option("--threads", o.threads, "worker threads (0: all cores)");
  app.add_option("--format", o.format, "csv | json");
  app.add_option("--out", o.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"1D light scattering from a condensate slab"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; flags override it");
  add_model_options(app, o);

  auto* eps = app.add_subcommand("epsilon", "permittivity sweep");
  auto* spectrum = app.add_subcommand("spectrum", "T, R, L versus detuning");
  auto* cmp = app.add_subcommand(
      "compare", "polariton and Maxwell reference on one grid");
  for (auto* sub : {eps, spectrum, cmp}) {
    sub->add_option("--dmin", o.dmin, "first detuning (gamma)");
    sub->add_option("--dmax", o.dmax, "last detuning (gamma)");
    sub->add_option("--points", o.points, "number of detunings");
  }
  auto* bragg = app.add_subcommand("bragg", "R at resonance versus delta_q");
  bragg->add_option("--dqmin", o.dqmin, "first delta_q (k0)");
  bragg->add_option("--dqmax", o.dqmax, "last delta_q (k0)");
  bragg->add_option("--points", o.bragg_points, "number of delta_q values");
  auto* disp = app.add_subcommand("dispersion", "bulk polariton branches");
  disp->add_option("--pmin", o.pmin, "first momentum (hbar k0)");
  disp->add_option("--pmax", o.pmax, "last momentum (hbar k0)");
  disp->add_option("--points", o.dispersion_points, "number of momenta");
  for (auto* sub : {eps, spectrum, cmp, bragg, disp}) {
    sub->fallthrough();
    sub->configurable();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*eps) return run_epsilon(o);
    if (*disp) return run_dispersion(o);
    if (*cmp) return run_compare(o);
    const RunConfig c = make_config(o);
    if (*spectrum) return run_table(o, run_spectrum(c, o.dmin, o.dmax, o.points));
    if (*bragg)
      return run_table(o, run_bragg_scan(c, o.dqmin, o.dqmax, o.bragg_points));
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitInvalid;
}
