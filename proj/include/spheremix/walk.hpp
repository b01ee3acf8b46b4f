#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spheremix/exec.hpp"
#include "spheremix/geometry.hpp"
#include "spheremix/rng.hpp"

namespace spheremix {

/// The four step rules that generate the same k-step law on the sphere.
enum class Formulation { drunkard, potted_plant, rotate_spin, bi_invariant };

const char* formulation_name(Formulation f);
/// Throws std::invalid_argument on an unknown name.
Formulation parse_formulation(const std::string& name);

struct WalkConfig {
  double theta = 1.0;     // step size in (0, pi)
  int k = 1;              // number of steps, >= 0
  Formulation formulation = Formulation::drunkard;
  uint64_t seed = 0;
  int64_t m = 1;          // number of trajectories, >= 1
};

/// End points of m independent trajectories started at the north pole.
/// cos_polar[i] is the z coordinate of trajectory i's endpoint.
/// Regenerating from the same config is bit-identical.
struct SampleSet {
  WalkConfig config;
  std::vector<double> cos_polar;
  std::vector<UnitVec3> endpoints;
};

/// One step of geodesic length exactly theta in a uniformly random
/// tangent direction.
UnitVec3 step_drunkard(const UnitVec3& y, double theta, SplitStream& rng);

/// One rotation by theta about a uniformly random equatorial axis,
/// applied to y. Displacement is <= theta, with equality at the poles.
UnitVec3 step_potted(const UnitVec3& y, double theta, SplitStream& rng);

/// Fixed rotation by theta about the x axis, then a uniform spin about
/// the north-south axis.
UnitVec3 step_rotate_spin(const UnitVec3& y, double theta, SplitStream& rng);

/// Uniform spin about the north-south axis, then a potted-plant rotation:
/// a draw from the bi-invariant average of the generator. Displacement is
/// not bounded by theta.
UnitVec3 step_biinvariant(const UnitVec3& y, double theta, SplitStream& rng);

UnitVec3 apply_step(Formulation f, const UnitVec3& y, double theta,
                    SplitStream& rng);

/// Runs m trajectories of k steps. Trajectory i draws from the substream
/// (config.seed, i), so the result is independent of thread count.
SampleSet run_walk(const WalkConfig& config, Exec exec = Exec::parallel);

/// Mean of P_n over the sampled cos(polar angle) values.
double empirical_moment(const SampleSet& samples, int n);

/// CSV with header `trajectory,cos_polar,x,y,z`, one row per trajectory,
/// floats printed with 17 significant digits.
void write_csv(const SampleSet& samples, std::ostream& out);
std::string to_csv(const SampleSet& samples);

}  // namespace spheremix
