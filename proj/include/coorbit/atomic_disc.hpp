// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coorbit/affine_group.hpp"

namespace coorbit::atoms {

using complexd = std::complex<double>;
using affine::GroupElement;
using affine::GroupFunction;
using affine::Window;

// Symmetric box around the identity in the left coordinates
// u = x^{-1} g |-> (log a_u, b_u); half-widths (lam, bb).
struct ChartBox {
  double lam;
  double bb;
  bool contains(double l, double b) const {
    return std::abs(l) < lam && std::abs(b) < bb;
  }
};

// Left-coset lattice x_{j,k} = (a0^j, 0) (1, k b0) = (a0^j, a0^j k b0)
// restricted to the window; points ordered lexicographically in (j, k).
struct Lattice {
  double a0 = 0.0, b0 = 0.0;
  Window window{1.0, 2.0, 1.0};
  std::vector<GroupElement> points;
  std::vector<std::pair<int, int>> jk;
  int j_min = 0, j_max = -1;

  int size() const { return static_cast<int>(points.size()); }
};

Lattice make_lattice(double a0, double b0, const Window& window);

// Left coordinates of x^{-1} g.
std::pair<double, double> left_coords(const GroupElement& x, const GroupElement& g);

// Lattice/cell geometry: the lattice is U-dense for
// U = (log(a0)/2, b0 sqrt(a0)/2) (up to the stated slack) and V-separated
// for any V with 2 bV e^{lamV} <= b0 and 2 lamV <= log a0.
ChartBox default_density_box(double a0, double b0, double slack = 1.05);
ChartBox default_separation_box(double a0, double b0);

struct LatticeCertificate {
  bool separated = false;
  bool dense = false;
  bool nested = false;  // V V subset of U
  double max_uncovered = 0.0;  // max over probes of min normalized chart distance
  long pairs_checked = 0;
  long probes = 0;
};

LatticeCertificate certify_lattice(const Lattice& lat, const ChartBox& U,
                                   const ChartBox& V, int probe_na = 160,
                                   int probe_nb = 160);

// Shepard-normalized C-infinity bumps phi_i(g) = B(l/lamU) B(b/bbU) in the
// left coordinates of x_i, B(t) = exp(1 - 1/(1-t^2)); psi_i = phi_i / Phi.
class PartitionOfUnity {
 public:
  PartitionOfUnity(const Lattice& lat, const ChartBox& U);

  const ChartBox& support_box() const { return box_; }
  const Lattice& lattice() const { return lat_; }

  // All (lattice index, psi value) pairs at g; values sum to 1 wherever
  // some bump is active. Throws std::runtime_error on a density gap.
  void eval(const GroupElement& g, std::vector<std::pair<int, double>>& out) const;
  double sum_raw(const GroupElement& g) const;  // Phi(g), 0 detects gaps

  // c_i = integral psi_i d(left Haar), accumulated over the given grid.
  std::vector<double> cell_masses(const affine::GroupGrid& grid) const;

 private:
  void candidates(const GroupElement& g, std::vector<int>& idx) const;
  Lattice lat_;
  ChartBox box_;
  double log_a0_;
  std::vector<std::vector<int>> by_level_;  // j - j_min -> point indices
};

// Largest symmetric dyadic box U with
//   | W(u x) / W(x) - 1 | < eps  for all u in U,
// searched over samples of x in the window, using the closed form of the
// weight-s matrix coefficient (ratio = (calpha(x)/calpha(ux))^s).
struct OscillationBox {
  ChartBox box;             // certified
  ChartBox next_larger;     // first failing box of the ladder
  double max_ratio_error;   // measured sup of |ratio - 1| on the box
};

OscillationBox oscillation_radius(double s, double eps, const Window& window,
                                  int x_samples = 4000, int u_samples = 7,
                                  unsigned seed = 1);

// Two-sided comparison constants (1-eps, 1+eps) for |W| under left offsets
// from U; re-verifies the bound on dense samples and reports the extremes.
struct ComparisonConstants {
  double c1, c2;
  double measured_min, measured_max;
  bool verified;
};

ComparisonConstants comparison_constants(const ChartBox& U, double s, double eps,
                                         const Window& window, int x_samples = 4000,
                                         unsigned seed = 2);

enum class OperatorVariant { T1, T2, T3 };

// The three sampling operators on the reproducing class of the normalized
// kernel k = Wuu / c  (so F = F * k there):
//   T1 F = (sum_i F(x_i) psi_i) * k
//   T2 F = sum_i c_i F(x_i) l_{x_i} k
//   T3 F = sum_i (integral F psi_i) l_{x_i} k
// Lattice-point values of F are cubic-interpolated from the grid.
GroupFunction apply_operator(OperatorVariant v, const GroupFunction& F,
                             const Lattice& lat, const PartitionOfUnity& pou,
                             const affine::DiscSeriesKernel& Wuu, double c);

struct NeumannOptions {
  double p = 2.0;
  double r = 0.0;
  double refuse_at = 1.0;  // refuse when measured contraction >= this
};

struct NeumannLog {
  double q = 0.0;                  // measured ||F - T F|| / ||F||
  std::vector<double> residuals;   // ||F_target - T(partial sum_m)||, m = 0..iters-1
};

// Truncated Neumann series sum_{m<=iters} (I - T)^m F_target for T^{-1};
// throws std::runtime_error when the measured contraction is >= refuse_at.
GroupFunction neumann_invert(OperatorVariant v, const GroupFunction& F_target,
                             const Lattice& lat, const PartitionOfUnity& pou,
                             const affine::DiscSeriesKernel& Wuu, double c,
                             int iters, const NeumannOptions& opt,
                             NeumannLog* log = nullptr);

struct SampledCoefficients {
  std::vector<complexd> values;  // one per lattice point
  double lp_norm(const Lattice& lat, double p, double r) const;
};

struct ReconstructionReport {
  double q = 0.0;
  std::vector<double> residuals;
  double final_error = 0.0;  // relative L^p_r error on the inner window
  bool refused = false;
  std::string refusal_reason;
};

// Synthesis sum_i c_i lambda_i l_{x_i}(Wuu/c) followed by Neumann
// inversion of T2; when reference is given the report carries the relative
// inner-window error against it.
GroupFunction reconstruct(const SampledCoefficients& samples, const Lattice& lat,
                          const PartitionOfUnity& pou,
                          const affine::DiscSeriesKernel& Wuu, double c, int iters,
                          const NeumannOptions& opt, affine::GridPtr grid,
                          const GroupFunction* reference,
                          ReconstructionReport* report);

// Empirical operator norm of convolution by |kernel| over a probe family.
double convolution_operator_norm(const affine::DiscSeriesKernel& abs_kernel,
                                 std::span<const GroupFunction> probes, double p,
                                 double r);

}  // namespace coorbit::atoms
