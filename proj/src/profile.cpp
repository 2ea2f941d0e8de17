#include "bec1d/profile.hpp"

#include <cmath>

#include "bec1d/special.hpp"

namespace bec1d {

ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "uniform") return ProfileKind::Uniform;
  if (name == "cosine") return ProfileKind::Cosine;
  if (name == "split") return ProfileKind::Split;
  throw InvalidParameter("unknown profile kind: " + std::string(name));
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Uniform: return "uniform";
    case ProfileKind::Cosine: return "cosine";
    case ProfileKind::Split: return "split";
  }
  return "unknown";
}

OrderParameterProfile::OrderParameterProfile(ProfileKind kind,
                                             std::vector<PlaneWave> components,
                                             double length)
    : kind_(kind), components_(std::move(components)), length_(length) {
  if (!(length > 0.0)) throw InvalidParameter("profile length must be > 0");
}

Complex OrderParameterProfile::operator()(double z) const {
  if (std::abs(z) >= half_length()) return 0.0;
  Complex xi = 0.0;
  for (const auto& c : components_)
    xi += c.amplitude * std::exp(kI * (c.wavenumber * z));
  return xi;
}

double OrderParameterProfile::density(double z) const {
  return std::norm((*this)(z));
}

Complex OrderParameterProfile::window_transform(double k) const {
  Complex sum = 0.0;
  for (const auto& c : components_)
    sum += c.amplitude * segment_integral(c.wavenumber + k, half_length());
  return sum;
}

double OrderParameterProfile::total_number() const {
  Complex sum = 0.0;
  for (const auto& a : components_)
    for (const auto& b : components_)
      sum += a.amplitude * std::conj(b.amplitude) *
             segment_integral(a.wavenumber - b.wavenumber, half_length());
  return sum.real();
}

double OrderParameterProfile::max_wavenumber() const {
  double m = 0.0;
  for (const auto& c : components_) m = std::max(m, std::abs(c.wavenumber));
  return m;
}

OrderParameterProfile make_profile(ProfileKind kind,
                                   const SimulationParams& params) {
  validate(params);
  const double L = params.length();
  const double n0 = params.density;
  const double edge = kPi / L;
  switch (kind) {
    case ProfileKind::Uniform:
      return {kind, {{std::sqrt(n0), 0.0}}, L};
    case ProfileKind::Cosine: {
      const Complex c = std::sqrt(n0) / 2.0;
      return {kind, {{c, edge}, {c, -edge}}, L};
    }
    case ProfileKind::Split: {
      // sqrt(2 n0) cos(pi z/L) cos(dq z) expanded into exponentials.
      const Complex c = std::sqrt(n0 / 8.0);
      const double dq = params.delta_q;
      return {kind,
              {{c, edge + dq}, {c, edge - dq}, {c, -edge + dq}, {c, -edge - dq}},
              L};
    }
  }
  throw InvalidParameter("unknown profile kind");
}

}  // namespace bec1d
