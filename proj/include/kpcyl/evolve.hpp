#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kpcyl/miura.hpp"
#include "kpcyl/ops.hpp"
#include "kpcyl/profiles.hpp"

namespace kpcyl {

enum class Equation { KP2, MKP2_PERTURBATION };
enum class Scheme { ETDRK4, IFRK4 };

// The MKP2 perturbation flow is integrated in the frame moving with the kink
// (zeta = x + ct), so the background Q_c is a fixed bounded multiplier and the
// perturbation stays localized for arbitrarily long runs. The lab-frame
// solution is w(t, x, y) = W(t, x + ct, y).
struct FlowSpec {
  Equation equation = Equation::KP2;
  double c = 2.0;  // kink speed parameter (MKP2 only)
  double dt = 5e-4;
  double t_end = 1.0;
  Scheme scheme = Scheme::ETDRK4;
  bool dealias = true;
  bool nonlinear = true;  // off: pure linear propagation (exact per mode)
  int observe_every = 100;
  double blowup_limit = 1e6;

  void validate(const Grid& grid) const;
  int steps() const;
};

struct TimeSeries {
  std::vector<std::string> columns;
  std::vector<double> times;
  std::vector<std::vector<double>> rows;  // one row per time, columns.size() wide
  std::string config_hash;

  void append(double t, std::vector<double> row);
};

// step index, time, current state (in the flow's own frame)
using Observer = std::function<void(int step, double t, const SpectralField&)>;

// time derivative of the integrated KP-II flow; the k=0 row is exactly zero
SpectralField kp2Rhs(const SpectralField& u);
// full moving-frame perturbation RHS around the kink background
SpectralField mkp2PerturbationRhs(const SpectralField& w, const KinkBackground& bg);

struct IntegrateResult {
  SpectralField final_field;
  double t_final = 0.0;
  int steps = 0;
  double max_k0_injection = 0.0;  // largest k=0 content produced by a stage RHS
};

IntegrateResult integrate(const SpectralField& u0, const FlowSpec& spec,
                          const Observer& observer = {});

// max relative deviation from the first entry
double l2Drift(const std::vector<double>& l2_values);

}  // namespace kpcyl
