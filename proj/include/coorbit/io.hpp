// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "json.hpp"

#include "coorbit/atomic_disc.hpp"
#include "coorbit/coorbit_core.hpp"
#include "coorbit/disc_bergman.hpp"
#include "coorbit/lightcone_besov.hpp"

namespace coorbit::io {

using nlohmann::json;

// CSV, columns a,b,weight.
void write_grid_csv(const affine::GroupGrid& grid, const std::string& path);
// CSV, columns a,b,re,im.
void write_function_csv(const affine::GroupFunction& f, const std::string& path);
// CSV, columns iter,residual.
void write_residuals_csv(const std::vector<double>& residuals,
                         const std::string& path);

json to_json(const axioms::AxiomReport& r);
json to_json(const disc::PowerSeries& f);          // [{re,im}, ...]
disc::PowerSeries power_series_from_json(const json& j);
json to_json(const disc::NormCorrespondence& r);
json to_json(const atoms::ReconstructionReport& r, const atoms::Lattice& lat);
json to_json(const cone::WhitneyCover& c);         // {delta, N, points:[...]}
json to_json(const besov::EquivalenceReport& r, int n, double p, double q, double s);

void write_json(const json& j, const std::string& path);

// Raw little-endian complex64 (float32 re, float32 im) in row-major node
// order, with a JSON sidecar header at path + ".json".
void write_field_raw(const besov::Field& f, const std::string& path);
besov::Field read_field_raw(const std::string& path);

}  // namespace coorbit::io
