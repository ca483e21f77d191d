#pragma once

#include <array>
#include <string>
#include <vector>

#include "mapsx/geometry.hpp"
#include "mapsx/rng.hpp"

namespace mapsx {

// Agent models. Two-character codes: order (1st/2nd) + family
// (Linear, Unicycle, Car).
//   L1: (x, y)           controls (vx, vy)
//   L2: (x, y, vx, vy)   controls (ax, ay)
//   U1: (x, y, th)       controls (v, omega)
//   C1: (x, y, th)       controls (v, phi)
//   C2: (x, y, th, v)    controls (a, phi)
enum class ModelTag { L1, L2, U1, C1, C2 };

const char* model_name(ModelTag tag);
bool parse_model_tag(const std::string& s, ModelTag& out);

struct DynamicsModel {
  ModelTag tag = ModelTag::L1;
  double vmax = 1.0;        // speed limit: controls of L1/U1/C1, velocity state of L2/C2
  double amax = 0.5;        // acceleration limit: controls of L2/C2
  double omega_max = 1.0;   // turn rate limit (U1)
  double steer_max = 0.25 * 3.14159265358979323846;  // steering angle limit (C1/C2)
  double wheelbase = 0.5;   // C1/C2 only

  int state_dim() const;
  bool has_heading() const { return tag == ModelTag::U1 || tag == ModelTag::C1 || tag == ModelTag::C2; }
  bool second_order() const { return tag == ModelTag::L2 || tag == ModelTag::C2; }
};

// State vector; only the first state_dim() entries are meaningful.
struct AgentState {
  std::array<double, 4> q{};
};

struct ControlInput {
  std::array<double, 2> u{};
};

// One propagated motion: states at 0, dt, 2dt, ..., duration.
struct SampledMotion {
  std::vector<AgentState> states;
  ControlInput control;
  double duration = 0.0;
};

// Wrap an angle into [-pi, pi).
double wrap_angle(double a);

// f(s, u) of the model's ODE.
std::array<double, 4> derivative(const DynamicsModel& model, const AgentState& s,
                                 const ControlInput& u);

// Fixed-step RK4 integration; headings are wrapped after each step. Bound
// violations are not clamped here; validity is the caller's concern.
SampledMotion propagate(const DynamicsModel& model, const AgentState& s0, const ControlInput& u,
                        int steps, double dt);

inline Point2 project_w(const AgentState& s) { return {s.q[0], s.q[1]}; }

// Metric weights for the nearest-neighbour distance.
inline constexpr double kHeadingWeight = 0.5;
inline constexpr double kVelocityWeight = 0.2;

// Position distance + weighted heading and velocity differences. Symmetric,
// zero on identical states, satisfies the triangle inequality.
double state_distance(const DynamicsModel& model, const AgentState& a, const AgentState& b);

// Per-dimension control bounds.
void control_bounds(const DynamicsModel& model, std::array<double, 2>& lo,
                    std::array<double, 2>& hi);

ControlInput sample_control(const DynamicsModel& model, Rng& rng);

// Control that keeps a goal-reached agent in place: zero for first-order
// models; for second-order models, braking at most amax toward zero velocity
// over the given duration (exact stop when reachable).
ControlInput hold_control(const DynamicsModel& model, const AgentState& s, double duration);

// Velocity-state bound check (position bounds are the workspace's concern).
bool velocity_within_bounds(const DynamicsModel& model, const AgentState& s);

}  // namespace mapsx
