#include "mapsx/dynamics.hpp"

#include <cmath>

namespace mapsx {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* model_name(ModelTag tag) {
  switch (tag) {
    case ModelTag::L1: return "L1";
    case ModelTag::L2: return "L2";
    case ModelTag::U1: return "U1";
    case ModelTag::C1: return "C1";
    case ModelTag::C2: return "C2";
  }
  return "?";
}

bool parse_model_tag(const std::string& s, ModelTag& out) {
  if (s == "L1") out = ModelTag::L1;
  else if (s == "L2") out = ModelTag::L2;
  else if (s == "U1") out = ModelTag::U1;
  else if (s == "C1") out = ModelTag::C1;
  else if (s == "C2") out = ModelTag::C2;
  else return false;
  return true;
}

int DynamicsModel::state_dim() const {
  switch (tag) {
    case ModelTag::L1: return 2;
    case ModelTag::L2: return 4;
    case ModelTag::U1: return 3;
    case ModelTag::C1: return 3;
    case ModelTag::C2: return 4;
  }
  return 0;
}

double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

std::array<double, 4> derivative(const DynamicsModel& model, const AgentState& s,
                                 const ControlInput& u) {
  switch (model.tag) {
    case ModelTag::L1:
      return {u.u[0], u.u[1], 0.0, 0.0};
    case ModelTag::L2:
      return {s.q[2], s.q[3], u.u[0], u.u[1]};
    case ModelTag::U1:
      return {u.u[0] * std::cos(s.q[2]), u.u[0] * std::sin(s.q[2]), u.u[1], 0.0};
    case ModelTag::C1:
      return {u.u[0] * std::cos(s.q[2]), u.u[0] * std::sin(s.q[2]),
              u.u[0] / model.wheelbase * std::tan(u.u[1]), 0.0};
    case ModelTag::C2:
      return {s.q[3] * std::cos(s.q[2]), s.q[3] * std::sin(s.q[2]),
              s.q[3] / model.wheelbase * std::tan(u.u[1]), u.u[0]};
  }
  return {};
}

SampledMotion propagate(const DynamicsModel& model, const AgentState& s0, const ControlInput& u,
                        int steps, double dt) {
  SampledMotion motion;
  motion.control = u;
  motion.duration = steps * dt;
  motion.states.reserve(static_cast<std::size_t>(steps) + 1);
  motion.states.push_back(s0);

  AgentState s = s0;
  for (int step = 0; step < steps; ++step) {
    const auto k1 = derivative(model, s, u);
    AgentState s2;
    for (int i = 0; i < 4; ++i) s2.q[i] = s.q[i] + 0.5 * dt * k1[i];
    const auto k2 = derivative(model, s2, u);
    AgentState s3;
    for (int i = 0; i < 4; ++i) s3.q[i] = s.q[i] + 0.5 * dt * k2[i];
    const auto k3 = derivative(model, s3, u);
    AgentState s4;
    for (int i = 0; i < 4; ++i) s4.q[i] = s.q[i] + dt * k3[i];
    const auto k4 = derivative(model, s4, u);
    for (int i = 0; i < 4; ++i) {
      s.q[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (model.has_heading()) s.q[2] = wrap_angle(s.q[2]);
    motion.states.push_back(s);
  }
  return motion;
}

double state_distance(const DynamicsModel& model, const AgentState& a, const AgentState& b) {
  double d = std::hypot(a.q[0] - b.q[0], a.q[1] - b.q[1]);
  if (model.has_heading()) {
    double dth = std::abs(a.q[2] - b.q[2]);
    dth = std::fmod(dth, 2.0 * kPi);
    if (dth > kPi) dth = 2.0 * kPi - dth;
    d += kHeadingWeight * dth;
  }
  if (model.tag == ModelTag::L2) {
    d += kVelocityWeight * std::hypot(a.q[2] - b.q[2], a.q[3] - b.q[3]);
  } else if (model.tag == ModelTag::C2) {
    d += kVelocityWeight * std::abs(a.q[3] - b.q[3]);
  }
  return d;
}

void control_bounds(const DynamicsModel& model, std::array<double, 2>& lo,
                    std::array<double, 2>& hi) {
  switch (model.tag) {
    case ModelTag::L1:
      lo = {-model.vmax, -model.vmax};
      hi = {model.vmax, model.vmax};
      break;
    case ModelTag::L2:
      lo = {-model.amax, -model.amax};
      hi = {model.amax, model.amax};
      break;
    case ModelTag::U1:
      lo = {-model.vmax, -model.omega_max};
      hi = {model.vmax, model.omega_max};
      break;
    case ModelTag::C1:
      lo = {-model.vmax, -model.steer_max};
      hi = {model.vmax, model.steer_max};
      break;
    case ModelTag::C2:
      lo = {-model.amax, -model.steer_max};
      hi = {model.amax, model.steer_max};
      break;
  }
}

ControlInput sample_control(const DynamicsModel& model, Rng& rng) {
  std::array<double, 2> lo{}, hi{};
  control_bounds(model, lo, hi);
  ControlInput u;
  u.u[0] = rng.uniform(lo[0], hi[0]);
  u.u[1] = rng.uniform(lo[1], hi[1]);
  return u;
}

ControlInput hold_control(const DynamicsModel& model, const AgentState& s, double duration) {
  ControlInput u;
  if (model.tag == ModelTag::L2) {
    const double vx = s.q[2], vy = s.q[3];
    const double speed = std::hypot(vx, vy);
    if (speed > 1e-12) {
      if (speed <= model.amax * duration) {
        u.u[0] = -vx / duration;
        u.u[1] = -vy / duration;
      } else {
        u.u[0] = -model.amax * vx / speed;
        u.u[1] = -model.amax * vy / speed;
      }
    }
  } else if (model.tag == ModelTag::C2) {
    const double v = s.q[3];
    if (std::abs(v) > 1e-12) {
      u.u[0] = std::abs(v) <= model.amax * duration ? -v / duration
                                                    : -model.amax * (v > 0.0 ? 1.0 : -1.0);
    }
  }
  return u;
}

bool velocity_within_bounds(const DynamicsModel& model, const AgentState& s) {
  if (model.tag == ModelTag::L2) {
    return std::abs(s.q[2]) <= model.vmax && std::abs(s.q[3]) <= model.vmax;
  }
  if (model.tag == ModelTag::C2) {
    return std::abs(s.q[3]) <= model.vmax;
  }
  return true;
}

}  // namespace mapsx
