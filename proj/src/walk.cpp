#include "spheremix/walk.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "spheremix/legendre.hpp"

namespace spheremix {

const char* formulation_name(Formulation f) {
  switch (f) {
    case Formulation::drunkard: return "drunkard";
    case Formulation::potted_plant: return "potted_plant";
    case Formulation::rotate_spin: return "rotate_spin";
    case Formulation::bi_invariant: return "bi_invariant";
  }
  return "unknown";
}

Formulation parse_formulation(const std::string& name) {
  if (name == "drunkard") return Formulation::drunkard;
  if (name == "potted_plant") return Formulation::potted_plant;
  if (name == "rotate_spin") return Formulation::rotate_spin;
  if (name == "bi_invariant") return Formulation::bi_invariant;
  throw std::invalid_argument("unknown formulation: " + name);
}

namespace {

// Orthonormal tangent basis at y, Gram-Schmidt against the coordinate axis
// least aligned with y to stay well conditioned near the poles.
void tangent_basis(const UnitVec3& y, UnitVec3& e1, UnitVec3& e2) {
  const double ax = std::abs(y.x), ay = std::abs(y.y), az = std::abs(y.z);
  UnitVec3 seed{1.0, 0.0, 0.0};
  if (ay <= ax && ay <= az) {
    seed = UnitVec3{0.0, 1.0, 0.0};
  } else if (az <= ax && az <= ay) {
    seed = UnitVec3{0.0, 0.0, 1.0};
  }
  const double proj = dot(seed, y);
  e1 = make_unit(seed.x - proj * y.x, seed.y - proj * y.y,
                 seed.z - proj * y.z);
  e2 = make_unit(cross(y, e1).x, cross(y, e1).y, cross(y, e1).z);
}

}  // namespace

UnitVec3 step_drunkard(const UnitVec3& y, double theta, SplitStream& rng) {
  UnitVec3 e1, e2;
  tangent_basis(y, e1, e2);
  const double phi = rng.next_angle();
  const double c = std::cos(theta), s = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  return make_unit(c * y.x + s * (cp * e1.x + sp * e2.x),
                   c * y.y + s * (cp * e1.y + sp * e2.y),
                   c * y.z + s * (cp * e1.z + sp * e2.z));
}

UnitVec3 step_potted(const UnitVec3& y, double theta, SplitStream& rng) {
  const double psi = rng.next_angle();
  const UnitVec3 axis{std::cos(psi), std::sin(psi), 0.0};
  return rotate(axis_angle_rotation(axis, theta), y);
}

UnitVec3 step_rotate_spin(const UnitVec3& y, double theta, SplitStream& rng) {
  const UnitVec3 moved = rotate(axis_angle_rotation(UnitVec3{1, 0, 0}, theta), y);
  return rotate(z_rotation(rng.next_angle()), moved);
}

UnitVec3 step_biinvariant(const UnitVec3& y, double theta, SplitStream& rng) {
  const UnitVec3 spun = rotate(z_rotation(rng.next_angle()), y);
  return step_potted(spun, theta, rng);
}

UnitVec3 apply_step(Formulation f, const UnitVec3& y, double theta,
                    SplitStream& rng) {
  switch (f) {
    case Formulation::drunkard: return step_drunkard(y, theta, rng);
    case Formulation::potted_plant: return step_potted(y, theta, rng);
    case Formulation::rotate_spin: return step_rotate_spin(y, theta, rng);
    case Formulation::bi_invariant: return step_biinvariant(y, theta, rng);
  }
  throw std::invalid_argument("apply_step: bad formulation");
}

SampleSet run_walk(const WalkConfig& config, Exec exec) {
  if (!(config.theta > 0.0 && config.theta < kPi)) {
    throw std::invalid_argument("run_walk: theta must lie in (0, pi)");
  }
  if (config.k < 0) throw std::invalid_argument("run_walk: k must be >= 0");
  if (config.m < 1) throw std::invalid_argument("run_walk: m must be >= 1");

  SampleSet out;
  out.config = config;
  out.cos_polar.resize(static_cast<size_t>(config.m));
  out.endpoints.resize(static_cast<size_t>(config.m));

  const bool parallel = (exec == Exec::parallel);
  const int64_t m = config.m;
#pragma omp parallel for schedule(static) if (parallel)
  for (int64_t i = 0; i < m; ++i) {
    SplitStream rng(config.seed, static_cast<uint64_t>(i));
    UnitVec3 y = north();
    for (int s = 0; s < config.k; ++s) {
      y = apply_step(config.formulation, y, config.theta, rng);
    }
    out.endpoints[static_cast<size_t>(i)] = y;
    out.cos_polar[static_cast<size_t>(i)] = y.z;
  }
  return out;
}

double empirical_moment(const SampleSet& samples, int n) {
  if (n < 0) throw std::invalid_argument("empirical_moment: n must be >= 0");
  if (n == 0) return 1.0;
  double acc = 0.0;
  for (const double c : samples.cos_polar) acc += legendre_eval(n, c);
  return acc / static_cast<double>(samples.cos_polar.size());
}

void write_csv(const SampleSet& samples, std::ostream& out) {
  out << "trajectory,cos_polar,x,y,z\n";
  char buf[128];
  for (size_t i = 0; i < samples.cos_polar.size(); ++i) {
    const UnitVec3& p = samples.endpoints[i];
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g\n", i,
                  samples.cos_polar[i], p.x, p.y, p.z);
    out << buf;
  }
}

std::string to_csv(const SampleSet& samples) {
  std::ostringstream oss;
  write_csv(samples, oss);
  return oss.str();
}

}  // namespace spheremix
