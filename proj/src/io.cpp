// SPDX-License-Identifier: Apache-2.0
#include "coorbit/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace coorbit::io {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = {}) {
  std::ofstream os(path, mode);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

}  // namespace

void write_grid_csv(const affine::GroupGrid& grid, const std::string& path) {
  auto os = open_out(path);
  os << "a,b,weight\n";
  for (int i = 0; i < grid.size(); ++i)
    os << fmt(grid.a()[i]) << ',' << fmt(grid.b()[i]) << ','
       << fmt(grid.weights()[i]) << '\n';
}

void write_function_csv(const affine::GroupFunction& f, const std::string& path) {
  auto os = open_out(path);
  os << "a,b,re,im\n";
  const auto& g = f.grid();
  for (int i = 0; i < g.size(); ++i)
    os << fmt(g.a()[i]) << ',' << fmt(g.b()[i]) << ',' << fmt(f.re[i]) << ','
       << fmt(f.im[i]) << '\n';
}

void write_residuals_csv(const std::vector<double>& residuals,
                         const std::string& path) {
  auto os = open_out(path);
  os << "iter,residual\n";
  for (std::size_t i = 0; i < residuals.size(); ++i)
    os << i << ',' << fmt(residuals[i]) << '\n';
}

json to_json(const axioms::AxiomReport& r) {
  json j;
  j["axiom"] = r.axiom;
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["window"] = r.window;
  j["samples"] = r.samples;
  if (r.warning) j["warning"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const disc::PowerSeries& f) {
  json j = json::array();
  for (const auto& c : f.coeffs) j.push_back({{"re", c.real()}, {"im", c.imag()}});
  return j;
}

disc::PowerSeries power_series_from_json(const json& j) {
  std::vector<std::complex<double>> coeffs;
  for (const auto& e : j)
    coeffs.emplace_back(e.at("re").get<double>(), e.at("im").get<double>());
  return disc::PowerSeries(std::move(coeffs));
}

json to_json(const disc::NormCorrespondence& r) {
  json per = json::array();
  for (const auto& e : r.entries) {
    json je;
    je["id"] = e.id;
    if (e.skipped) {
      je["skipped"] = true;
    } else {
      je["group_norm"] = e.group_norm;
      je["bergman_norm"] = e.bergman;
      je["ratio"] = e.ratio;
    }
    per.push_back(je);
  }
  return json{{"per_function", per},
              {"spread", r.spread},
              {"chain_ratio", r.chain_ratio},
              {"chain_deviation", r.chain_deviation}};
}

json to_json(const atoms::ReconstructionReport& r, const atoms::Lattice& lat) {
  return json{{"lattice", {{"a0", lat.a0}, {"b0", lat.b0}, {"count", lat.size()}}},
              {"q", r.q},
              {"final_error", r.final_error},
              {"refused", r.refused}};
}

json to_json(const cone::WhitneyCover& c) {
  json pts = json::array();
  for (const auto& co : c.coords) {
    json p{{"gamma", co.gamma}, {"t", co.t}};
    json cc = json::array();
    for (double v : co.c) cc.push_back(v);
    p["c"] = cc;
    pts.push_back(p);
  }
  return json{{"delta", c.delta}, {"N", c.overlap}, {"points", pts}};
}

json to_json(const besov::EquivalenceReport& r, int n, double p, double q,
             double s) {
  json per = json::array();
  for (const auto& e : r.per_function)
    per.push_back(
        {{"id", e.id}, {"besov", e.besov}, {"lpqs", e.lpqs}, {"rho", e.rho}});
  return json{{"params", {{"n", n}, {"p", p}, {"q", q}, {"s", s}, {"sigma", r.sigma}}},
              {"per_function", per},
              {"C_emp", r.c_emp},
              {"C_emp_refined", r.c_emp_refined},
              {"refinement_drift", r.refinement_drift},
              {"C_emp_alt_cover", r.c_emp_alt},
              {"alt_cover_drift", r.alt_drift}};
}

void write_json(const json& j, const std::string& path) {
  auto os = open_out(path);
  os << j.dump(2) << '\n';
}

void write_field_raw(const besov::Field& f, const std::string& path) {
  auto os = open_out(path, std::ios::binary);
  std::vector<float> buf(2 * f.v.size());
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    buf[2 * i] = static_cast<float>(f.v[i].real());
    buf[2 * i + 1] = static_cast<float>(f.v[i].imag());
  }
  os.write(reinterpret_cast<const char*>(buf.data()),
           static_cast<std::streamsize>(buf.size() * sizeof(float)));
  json hdr{{"dtype", "complex64"},
           {"byte_order", "little"},
           {"layout", "row-major"},
           {"dims", f.grid->dims()},
           {"delta", f.grid->delta()}};
  write_json(hdr, path + ".json");
}

besov::Field read_field_raw(const std::string& path) {
  std::ifstream hs(path + ".json");
  if (!hs) throw std::runtime_error("missing sidecar header: " + path + ".json");
  json hdr = json::parse(hs);
  auto grid = besov::make_box_grid(hdr.at("dims").get<std::vector<int>>(),
                                   hdr.at("delta").get<std::vector<double>>());
  besov::Field f(grid);
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  std::vector<float> buf(2 * f.v.size());
  is.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!is) throw std::runtime_error("short read: " + path);
  for (std::size_t i = 0; i < f.v.size(); ++i)
    f.v[i] = {static_cast<double>(buf[2 * i]), static_cast<double>(buf[2 * i + 1])};
  return f;
}

}  // namespace coorbit::io
