#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bec1d/params.hpp"

namespace bec1d {

enum class ProfileKind { Uniform, Cosine, Split };

ProfileKind parse_profile_kind(std::string_view name);
std::string to_string(ProfileKind kind);

struct PlaneWave {
  Complex amplitude;
  double wavenumber;  // k0
};

// Xi(z) = sum_a c_a exp(i kappa_a z) on (-length/2, length/2), zero outside.
// Immutable after construction.
class OrderParameterProfile {
 public:
  OrderParameterProfile(ProfileKind kind, std::vector<PlaneWave> components,
                        double length);

  ProfileKind kind() const { return kind_; }
  const std::vector<PlaneWave>& components() const { return components_; }
  double length() const { return length_; }
  double half_length() const { return 0.5 * length_; }

  Complex operator()(double z) const;
  double density(double z) const;

  // Integral of Xi(z) exp(i k z) over the slab.
  Complex window_transform(double k) const;

  // Integral of |Xi|^2 over the slab.
  double total_number() const;

  // Largest |kappa_a|; the Bragg reach of the profile.
  double max_wavenumber() const;

 private:
  ProfileKind kind_;
  std::vector<PlaneWave> components_;
  double length_;
};

OrderParameterProfile make_profile(ProfileKind kind,
                                   const SimulationParams& params);

}  // namespace bec1d
