#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bec1d/spectra.hpp"
#include "bec1d/table_io.hpp"

using namespace bec1d;

namespace {

RunConfig small_config(ProfileKind kind, double L = 1.0) {
  RunConfig c;
  c.profile = kind;
  c.params.slab_depth = L;
  c.threads = 2;
  return c;
}

std::string csv(const SpectrumTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

}  // namespace

TEST_CASE("empty slab spectrum") {
  RunConfig c = small_config(ProfileKind::Uniform, 3.0);
  c.params.density = 0.0;
  for (Method m : {Method::Polariton, Method::Maxwell}) {
    c.method = m;
    const auto t = run_spectrum(c, -2.0, 2.0, 7);
    for (const auto& r : t.rows) {
      CHECK(r.T == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(r.R == 0.0);
      CHECK(std::abs(r.L) < 1e-15);
    }
  }
}

TEST_CASE("rows are ordered, strictly increasing and within flux bounds") {
  RunConfig c = small_config(ProfileKind::Cosine, 2.0);
  c.threads = 3;
  const auto t = run_spectrum(c, -1.0, 1.0, 11);
  REQUIRE(t.rows.size() == 11);
  for (size_t i = 0; i < t.rows.size(); ++i) {
    if (i) CHECK(t.rows[i].x > t.rows[i - 1].x);
    CHECK(t.rows[i].T >= 0.0);
    CHECK(t.rows[i].R >= 0.0);
    CHECK(t.rows[i].T + t.rows[i].R <= 1.0 + 1e-9);
    CHECK(t.rows[i].converged);
    CHECK(t.rows[i].cutoff > 0);
  }
  CHECK(t.rows.front().x == -1.0);
  CHECK(t.rows.back().x == 1.0);
}

TEST_CASE("deterministic output and metadata replay") {
  RunConfig c = small_config(ProfileKind::Split, 1.5);
  c.params.delta_q = 0.7;
  const auto a = run_spectrum(c, -1.0, 1.0, 5);
  c.threads = 1;
  const auto b = run_spectrum(c, -1.0, 1.0, 5);
  CHECK(csv(a) == csv(b));

  const auto replayed = replay(a.metadata);
  REQUIRE(replayed.rows.size() == a.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(std::abs(replayed.rows[i].T - a.rows[i].T) <= 1e-12);
    CHECK(std::abs(replayed.rows[i].R - a.rows[i].R) <= 1e-12);
  }
  // Metadata read back from CSV is enough on its own.
  std::istringstream in(csv(a));
  const auto parsed = read_csv(in);
  CHECK(csv(replay(parsed.metadata)) == csv(a));
}

TEST_CASE("csv and json contract") {
  RunConfig c = small_config(ProfileKind::Uniform, 1.0);
  const auto t = run_spectrum(c, -0.5, 0.5, 3);
  const std::string text = csv(t);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "# kind=spectrum");
  while (line.rfind("# ", 0) == 0) std::getline(lines, line);
  CHECK(line == "delta,T,R,L,cutoff,converged");
  std::getline(lines, line);
  CHECK(line.substr(0, 24) == "-5.0000000000000000e-01,");

  std::istringstream csv_in(text);
  const auto from_csv = read_csv(csv_in);
  CHECK(from_csv.metadata == t.metadata);
  REQUIRE(from_csv.rows.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(from_csv.rows[i].T == t.rows[i].T);
    CHECK(from_csv.rows[i].R == t.rows[i].R);
    CHECK(from_csv.rows[i].L == t.rows[i].L);
  }

  std::ostringstream js;
  write_json(js, t);
  std::istringstream json_in(js.str());
  const auto from_json = read_json(json_in);
  CHECK(from_json.kind == "spectrum");
  CHECK(from_json.metadata == t.metadata);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(from_json.rows[i].x == t.rows[i].x);
    CHECK(from_json.rows[i].T == t.rows[i].T);
    CHECK(from_json.rows[i].R == t.rows[i].R);
  }
}

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "1.0000000000000001e-01");
  CHECK(format_double(-2.0) == "-2.0000000000000000e+00");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("method and sweep validation") {
  RunConfig c = small_config(ProfileKind::Cosine);
  c.method = Method::Maxwell;
  CHECK_THROWS_AS(run_spectrum(c, -1.0, 1.0, 5), InvalidParameter);
  c.method = Method::Polariton;
  CHECK_THROWS_AS(run_spectrum(c, -1.0, 1.0, 1), InvalidParameter);
  CHECK_THROWS_AS(run_spectrum(c, 1.0, -1.0, 5), InvalidParameter);
  CHECK_THROWS_AS(parse_method("fdtd"), InvalidParameter);
  CHECK(parse_method("maxwell-forward-only") == Method::MaxwellForwardOnly);
}

TEST_CASE("non-converged rows are flagged and the run continues") {
  RunConfig c = small_config(ProfileKind::Cosine);
  c.solver.tol = 1e-15;
  c.solver.max_doublings = 1;
  const auto t = run_spectrum(c, -1.0, 1.0, 3);
  CHECK_FALSE(t.all_converged());
  for (const auto& r : t.rows) {
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.T));
  }
  const std::string text = csv(t);
  CHECK(text.find(",0\n") != std::string::npos);
}

TEST_CASE("compare attaches deviation summary") {
  RunConfig c = small_config(ProfileKind::Uniform, 1.0);
  c.params.recoil = 0.0;
  const auto [pol, ref] = run_compare(c, -1.0, 1.0, 5);
  CHECK(ref.meta("method") == "maxwell");
  CHECK(pol.meta("reference") == "maxwell");
  CHECK(std::stod(pol.meta("max_dev_T")) < 1e-9);

  RunConfig cc = small_config(ProfileKind::Cosine, 1.0);
  const auto [pc, rc] = run_compare(cc, -1.0, 1.0, 3);
  CHECK(rc.meta("method") == "maxwell-forward-only");
  for (const auto& r : rc.rows) CHECK(r.R == 0.0);
}

TEST_CASE("bragg scan") {
  RunConfig c = small_config(ProfileKind::Uniform, 1.0);
  const auto t = run_bragg_scan(c, 0.4, 0.6, 3);
  CHECK(t.kind == "bragg");
  CHECK(t.meta("profile") == "split");
  CHECK(t.meta("detuning") == format_double(0.0));
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[1].x == doctest::Approx(0.5));
  const std::string text = csv(t);
  CHECK(text.find("delta_q,R,T,L,cutoff,converged") != std::string::npos);
  std::istringstream in(text);
  const auto back = read_csv(in);
  CHECK(back.kind == "bragg");
  CHECK(back.rows[2].R == t.rows[2].R);
  CHECK(csv(replay(back.metadata)) == text);

  c.params.mu_c = 5e-4;
  c.resonance = ResonanceReference::Bare;
  CHECK(run_bragg_scan(c, 0.4, 0.6, 2).meta("detuning") == format_double(5e-4));
}

TEST_CASE("recoil sensitivity scales as sqrt(recoil)") {
  // Recoil cuts the local-field part of the self-energy off at k ~ 1/sqrt(r),
  // so the departure from the recoil-free (Maxwell) spectrum goes as
  // sqrt(r): a factor 10 per factor 100 in r.
  auto deviation = [](double recoil) {
    RunConfig c = small_config(ProfileKind::Uniform, 1.0);
    c.params.recoil = recoil;
    const auto [pol, ref] = run_compare(c, -4.0, 4.0, 41);
    return std::stod(pol.meta("max_dev_T"));
  };
  const double big = deviation(1e-3), small = deviation(1e-5);
  CHECK(big > 1e-3);
  CHECK(big / small == doctest::Approx(10.0).epsilon(0.3));
}
