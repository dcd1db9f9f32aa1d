#pragma once

#include <complex>
#include <vector>

#include "qidm/quasi_levy.hpp"

namespace qidm {

// Probability mass function concentrated on the integers.
struct LatticePmf {
  std::vector<long long> offsets;  // sorted, unique
  std::vector<double> probs;       // nonnegative, sum 1 within 1e-12

  long long span() const {
    return offsets.empty() ? 0 : offsets.back() - offsets.front();
  }
  std::complex<double> cf(double theta) const;
};

LatticePmf make_lattice_pmf(std::vector<long long> offsets, std::vector<double> probs);

// Convolution of two lattice pmfs (law of the independent sum).
LatticePmf convolve(const LatticePmf& a, const LatticePmf& b);

struct QidCheck {
  bool is_qid = false;
  double min_cf_modulus = 0.0;
  double witness_theta = 0.0;
  int grid_size = 0;
};

// zero_threshold for the zero-free criterion; a refined minimum inside
// [kInconclusiveFloor, kZeroThreshold] raises InconclusiveError because
// floats cannot certify the exact dichotomy at 0.
constexpr double kZeroThreshold = 1e-8;
constexpr double kInconclusiveFloor = 1e-12;

int default_grid_size(long long span);

// Concentrated-on-the-integers criterion: the law is QID exactly when its
// characteristic function has no zeros. Evaluates |cf| on a uniform grid over
// [0, 2pi), then refines around the grid minimum to theta-tolerance 1e-12.
QidCheck qid_check_lattice(const LatticePmf& pmf, int grid_size = 0);

struct TripletExtraction {
  CharacteristicTriplet<double> triplet;  // a = 0, levy supported on integers
  std::vector<std::pair<long long, double>> ordered_masses;  // by increasing |n|
  long long winding = 0;                  // integer part of the exponent slope
  int grid_size = 0;
  double roundtrip_residual = 0.0;  // sup over grid |cf_eval(triplet) - pmf cf|
  double max_phase_step = 0.0;
};

// Distinguished logarithm along the grid (continuous branch, log cf(0) = 0),
// Fourier inversion of the periodic part into signed masses at integer n != 0,
// and the drift gamma = winding + sum tau(n) c_n. Levy atoms are reported by
// increasing |n|; masses below kAtomDropThreshold are dropped.
constexpr double kAtomDropThreshold = 1e-13;

TripletExtraction extract_triplet_lattice(const LatticePmf& pmf, int grid_size = 0);

}  // namespace qidm
