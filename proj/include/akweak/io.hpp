#pragma once

#include <string>

#include "akweak/gabor.hpp"
#include "akweak/kraus.hpp"

namespace akweak {

// All CSV output uses 17 significant digits, which round-trips doubles
// exactly and keeps repeated runs byte-identical.

// WaveFunction: CSV "x,re,im" plus a JSON sidecar (same path, extension
// replaced by .json) carrying {units, b, n, x_min, x_max, rep}.
void save_state(const WaveFunction& psi, const std::string& csv_path);
WaveFunction load_state(const std::string& csv_path);

// GaborField: CSV "a1,a2,re,im" (or "a1,a2,density" for |F|^2) plus sidecar.
void save_field(const GaborField& f, const std::string& csv_path, bool as_density = false);
GaborField load_field(const std::string& csv_path);

// JointDistribution: CSV "xm,pm,density" plus sidecar.
void save_distribution(const JointDistribution& dist, const std::string& csv_path);

// Samples: CSV "xm,pm".
void save_samples(const std::vector<PhasePoint>& samples, const std::string& csv_path);

std::string sidecar_path(const std::string& csv_path);
std::string format_double(double v);

}  // namespace akweak
