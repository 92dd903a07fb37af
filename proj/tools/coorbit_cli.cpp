// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: every experiment is a subcommand with config-file
// and flag control, emitting CSV/JSON artifacts.  Exit codes: 0 all checks
// passed, 2 parameter validation error, 3 an acceptance threshold failed.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "coorbit/atomic_disc.hpp"
#include "coorbit/coorbit_core.hpp"
#include "coorbit/disc_bergman.hpp"
#include "coorbit/io.hpp"
#include "coorbit/lightcone_besov.hpp"
#include "coorbit/lightcone_geometry.hpp"

using namespace coorbit;
using io::json;
namespace fs = std::filesystem;

namespace {

double uni(std::mt19937_64& r, double lo, double hi) {
  return lo + (hi - lo) * ((r() >> 11) * 0x1.0p-53);
}

// flat key=value file; '#' comments; values override option defaults but
// lose to explicit flags.
std::map<std::string, std::string> load_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  if (path.empty()) return kv;
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

struct Common {
  std::string out = "out";
  std::string config;
  unsigned seed = 1;
  fs::path ensure_out() const {
    fs::path p(out);
    fs::create_directories(p);
    return p;
  }
};

void take_last_everywhere(CLI::App* app) {
  app->fallthrough(true);
  for (auto* opt : app->get_options())
    opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  for (auto* sub : app->get_subcommands({})) take_last_everywhere(sub);
}

// Inject config-file pairs as flags right after the subcommand names, so
// explicit command-line flags (parsed later, TakeLast) override them.
std::vector<std::string> assemble_args(int argc, char** argv,
                                       std::string* config_path) {
  std::vector<std::string> raw(argv + 1, argv + argc);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == "--config" && i + 1 < raw.size()) *config_path = raw[i + 1];
    if (raw[i].rfind("--config=", 0) == 0) *config_path = raw[i].substr(9);
  }
  const auto kv = load_config(*config_path);
  static const std::vector<std::string> names = {
      "disc", "cone",  "check",       "wavelet",    "norms",
      "reconstruct", "cover", "besov", "equivalence"};
  std::size_t at = 0;
  while (at < raw.size() &&
         std::find(names.begin(), names.end(), raw[at]) != names.end())
    ++at;
  std::vector<std::string> out(raw.begin(), raw.begin() + at);
  for (const auto& [key, val] : kv) out.push_back("--" + key + "=" + val);
  out.insert(out.end(), raw.begin() + at, raw.end());
  return out;
}

std::vector<disc::PowerSeries> default_family() {
  return {disc::PowerSeries({1.0}), disc::PowerSeries::monomial(1),
          disc::PowerSeries::monomial(2), disc::PowerSeries({1.0, 1.0}),
          disc::PowerSeries::monomial(3)};
}

const std::vector<std::string> kFamilyIds = {"1", "z", "z^2", "1+z", "z^3"};

int run_disc_wavelet(const Common& c, double s, int cases, int nr, int nt) {
  if (!(s > 1.0)) throw CLI::ValidationError("--s", "requires s > 1");
  // tanh-sinh radial rule: uniform accuracy in s, including the endpoint
  // weights at non-integer s where Gauss-Legendre loses its rate
  auto grid = disc::make_disc_grid(nr, nt, disc::RadialRule::TanhSinh);
  auto fine = disc::make_disc_grid(4 * nr, 4 * nt, disc::RadialRule::TanhSinh);
  std::mt19937_64 rng(c.seed);
  const auto fam = default_family();
  json rows = json::array();
  double worst = 0.0, worst_fine = 0.0;
  for (int t = 0; t < cases; ++t) {
    const affine::GroupElement g(std::exp(uni(rng, -1.2, 1.2)), uni(rng, -3.5, 3.5));
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const auto closed = disc::wavelet_closed(s, fam[i], g);
      const auto quad = disc::wavelet_quadrature(s, fam[i], g, *grid);
      const auto quad4 = disc::wavelet_quadrature(s, fam[i], g, *fine);
      const double scale = std::max(1e-300, std::abs(closed));
      const double rel = std::abs(quad - closed) / scale;
      worst = std::max(worst, rel);
      worst_fine = std::max(worst_fine, std::abs(quad4 - closed) / scale);
      rows.push_back({{"f", kFamilyIds[i]},
                      {"a", g.a},
                      {"b", g.b},
                      {"closed_re", closed.real()},
                      {"closed_im", closed.imag()},
                      {"rel_error", rel}});
    }
  }
  const bool pass = worst < 1e-6 && (worst_fine <= worst / 4.0 || worst < 1e-11);
  io::write_json(json{{"s", s},
                      {"grid", {{"radial", nr}, {"angular", nt}}},
                      {"max_rel_error", worst},
                      {"max_rel_error_refined", worst_fine},
                      {"pass", pass},
                      {"cases", rows}},
                 (c.ensure_out() / "wavelet.json").string());
  std::cout << "disc wavelet: max rel error " << worst << " (refined "
            << worst_fine << ")\n";
  return pass ? 0 : 3;
}

int run_disc_norms(const Common& c, double s, double r, double p) {
  disc::check_correspondence_parameters(s, r, p);  // throws with the inequality
  const double sigma = (s - r) * p / 2.0;
  // window ladder matched to the tail decay exponent 2(sigma - 1)
  const double lmax = sigma >= 2.0 ? 5.0 : 12.0;
  const int na = sigma >= 2.0 ? 120 : 480;
  const int nb = sigma >= 2.0 ? 1280 : 3200;
  const double bmax = sigma >= 2.0 ? 160.0 : 800.0;
  affine::GroupGrid gg({std::exp(-lmax), std::exp(lmax), bmax}, na, nb);
  auto dg = disc::make_disc_grid(128, 256);
  const auto fam = default_family();
  const auto rep = disc::norm_correspondence(s, r, p, fam, kFamilyIds, *dg, gg);
  json j = io::to_json(rep);
  j["params"] = {{"s", s}, {"r", r}, {"p", p}, {"sigma", sigma}};
  const bool pass = rep.spread < 5e-3;
  j["pass"] = pass;
  io::write_json(j, (c.ensure_out() / "ratios.json").string());
  std::cout << "disc norms: spread " << rep.spread << ", chain ratio "
            << rep.chain_ratio << " (deviation " << rep.chain_deviation << ")\n";
  return pass ? 0 : 3;
}

int run_disc_reconstruct(const Common& c, double s, double a0, double b0,
                         int iters, double p, double r) {
  if (!(s > 1.0)) throw CLI::ValidationError("--s", "requires s > 1");
  if (!(a0 > 1.0)) throw CLI::ValidationError("--a0", "requires a0 > 1");
  if (!(b0 > 0.0)) throw CLI::ValidationError("--b0", "requires b0 > 0");
  auto grid = affine::make_haar_grid({std::exp(-3.0), std::exp(3.0), 16.0}, 96, 256);
  const affine::Window lw{std::exp(-2.8), std::exp(2.8), 15.0};
  const auto lat = atoms::make_lattice(a0, b0, lw);
  const auto U = atoms::default_density_box(a0, b0);
  const atoms::PartitionOfUnity pou(lat, U);
  const auto Wuu = disc::sample_voice_transform(s, disc::PowerSeries({1.0}), grid);
  const double cadm = axioms::estimate_admissibility(Wuu);
  const affine::DiscSeriesKernel K{s, 1.0, false};

  atoms::SampledCoefficients sc;
  for (const auto& pt : lat.points)
    sc.values.push_back(disc::wavelet_closed(s, disc::PowerSeries({1.0}), pt));

  atoms::NeumannOptions opt{p, r, 1.0};
  atoms::ReconstructionReport rep;
  const auto out = c.ensure_out();
  try {
    atoms::reconstruct(sc, lat, pou, K, cadm, iters, opt, grid, &Wuu, &rep);
  } catch (const std::runtime_error& e) {
    io::write_json(json{{"lattice", {{"a0", a0}, {"b0", b0}, {"count", lat.size()}}},
                        {"q", rep.q},
                        {"refused", true},
                        {"reason", e.what()}},
                   (out / "reconstruction.json").string());
    std::cout << "disc reconstruct: refused (" << e.what() << ")\n";
    return 3;
  }
  io::write_residuals_csv(rep.residuals, (out / "reconstruction.csv").string());
  io::write_json(io::to_json(rep, lat), (out / "reconstruction.json").string());
  std::cout << "disc reconstruct: q " << rep.q << ", final error "
            << rep.final_error << "\n";
  return rep.final_error < 1e-2 ? 0 : 3;
}

int run_cone_cover(const Common& c, int n, double delta, int probes) {
  if (n < 3) throw CLI::ValidationError("--n", "dimension n >= 3 required");
  cone::Region reg;
  reg.n = n;
  const auto cov = cone::whitney_cover(reg, delta, probes, c.seed);
  const auto base = cone::certify_cover(cov, 10);
  const auto dense = cone::certify_cover(cov, 1);
  json j = io::to_json(cov);
  j["certified"] = base.half_disjoint && base.covered && dense.half_disjoint &&
                   dense.covered;
  j["probes"] = dense.probes;
  io::write_json(j, (c.ensure_out() / "cover.json").string());
  std::cout << "cone cover: " << cov.points.size() << " points, overlap "
            << cov.overlap << "\n";
  return j["certified"].get<bool>() ? 0 : 3;
}

struct ConeSetup {
  besov::BoxGridPtr wgrid;
  besov::ConeTestFunction u;
  std::vector<besov::ConeTestFunction> family;
  std::vector<std::string> ids;
};

ConeSetup make_cone_setup(int nodes, double dw) {
  auto wgrid = besov::make_box_grid({nodes, nodes, nodes}, {dw, dw, dw});
  ConeSetup s{wgrid, besov::cone_bump(wgrid, cone::base_point(3), 0.5), {}, {}};
  struct C {
    double g, t, c, w;
  };
  for (C cc : {C{1.0, 0.0, 0.0, 0.35}, C{1.25, 0.3, 0.2, 0.4},
               C{0.85, -0.3, -0.2, 0.35}, C{1.1, 0.45, -0.3, 0.45},
               C{0.95, -0.45, 0.3, 0.4}, C{1.3, 0.1, 0.1, 0.3}}) {
    s.family.push_back(besov::cone_bump(
        s.wgrid, cone::point_from_coords({cc.g, cc.t, {cc.c}}, 3), cc.w));
    s.ids.push_back("bump(" + std::to_string(cc.g) + "," + std::to_string(cc.t) +
                    "," + std::to_string(cc.c) + ")");
  }
  return s;
}

int run_cone_besov(const Common& c, int n, double p, double q, double sigma,
                   double delta) {
  if (n != 3) throw CLI::ValidationError("--n", "besov norms are wired for n = 3");
  if (!(p >= 1.0) || !(q >= 1.0))
    throw CLI::ValidationError("--p/--q", "requires 1 <= p, q");
  const auto setup = make_cone_setup(64, 0.15);
  cone::Region reg;
  const auto cov = cone::whitney_cover(reg, delta, 58, c.seed);
  const auto lp = besov::lp_partition(cov, setup.wgrid);
  json per = json::array();
  bool any_offband = false;
  for (std::size_t i = 0; i < setup.family.size(); ++i) {
    bool off = false;
    const double norm = besov::besov_norm(setup.family[i].w_space, p, q, sigma, lp, &off);
    any_offband = any_offband || off;
    per.push_back({{"id", setup.ids[i]}, {"besov", norm}, {"offband", off}});
  }
  io::write_json(json{{"params", {{"n", n}, {"p", p}, {"q", q}, {"sigma", sigma}}},
                      {"delta", delta},
                      {"sum_defect", lp.sum_defect},
                      {"per_function", per}},
                 (c.ensure_out() / "besov.json").string());
  std::cout << "cone besov: " << setup.family.size() << " norms written\n";
  return (lp.sum_defect <= 1e-12 && !any_offband) ? 0 : 3;
}

int run_cone_equivalence(const Common& c, int n, double p, double q, double s,
                         double delta, int hres) {
  if (n != 3)
    throw CLI::ValidationError("--n", "the equivalence harness is wired for n = 3");
  const auto setup = make_cone_setup(64, 0.15);
  const besov::ConeWaveletTransform wt(setup.u.w_space);
  cone::Region reg;
  const auto cov = cone::whitney_cover(reg, delta, 58, c.seed);
  const auto lp = besov::lp_partition(cov, setup.wgrid);
  const auto cov2 = cone::whitney_cover(reg, delta, 58, c.seed + 6);
  const auto lp2 = besov::lp_partition(cov2, setup.wgrid);
  const besov::HGrid h(reg, hres, hres, hres);
  const auto rep = besov::equivalence_experiment(p, q, s, setup.family, setup.ids,
                                                 lp, wt, h, &lp2, 2);
  json j = io::to_json(rep, n, p, q, s);
  const bool pass = rep.refinement_drift < 0.10 && rep.alt_drift < 0.10;
  j["pass"] = pass;
  io::write_json(j, (c.ensure_out() / "equivalence.json").string());
  std::cout << "cone equivalence: C_emp " << rep.c_emp << ", refinement drift "
            << rep.refinement_drift << ", alt-cover drift " << rep.alt_drift
            << "\n";
  return pass ? 0 : 3;
}

int run_check(const Common& c, double tol_closed, double tol_quad) {
  std::mt19937_64 rng(c.seed);
  std::vector<json> reports;
  bool all_pass = true;

  // closed-form intertwining across weights
  for (double s : {2.5, 3.0, 4.0}) {
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
      std::vector<std::complex<double>> cf(1 + rng() % 5);
      for (auto& cc : cf) cc = {uni(rng, -1, 1), uni(rng, -1, 1)};
      const disc::PowerSeries phi(cf);
      const affine::GroupElement y(std::exp(uni(rng, -1.5, 1.5)), uni(rng, -3, 3));
      auto W = [&](int handle, const affine::GroupElement& x) {
        if (handle == 0) return disc::wavelet_closed(s, phi, x);
        const auto [alpha, beta] = affine::cayley(x);
        const auto ca = std::conj(alpha);
        return disc::pow_minus_s(ca, s) * disc::act(s, y, phi, beta / ca);
      };
      std::vector<affine::GroupElement> samples;
      for (int i = 0; i < 20; ++i)
        samples.emplace_back(std::exp(uni(rng, -2, 2)), uni(rng, -5, 5));
      const auto rep =
          axioms::check_intertwining(W, axioms::left_translate(), y, samples,
                                     tol_closed);
      worst = std::max(worst, rep.residual);
      all_pass = all_pass && rep.pass;
    }
    reports.push_back({{"axiom", "intertwining"},
                       {"s", s},
                       {"residual", worst},
                       {"tolerance", tol_closed},
                       {"pass", worst <= tol_closed}});
  }

  // quadrature-backed reproducing identity at a compact default grid
  {
    auto grid =
        affine::make_haar_grid({std::exp(-3.5), std::exp(3.5), 30.0}, 72, 480);
    const auto Wuu =
        disc::sample_voice_transform(4.0, disc::PowerSeries({1.0}), grid);
    bool warn = false;
    const double cadm = axioms::estimate_admissibility(Wuu, &warn);
    auto rep = axioms::check_reproducing(Wuu, Wuu, cadm, tol_quad);
    rep.warning = warn;
    json jr = io::to_json(rep);
    jr["s"] = 4.0;
    jr["admissibility"] = cadm;
    reports.push_back(jr);
    all_pass = all_pass && rep.pass;

    const double norm = affine::lp_norm(Wuu, 2.0, 0.0);
    const auto iso = axioms::check_isometry(Wuu, norm, 2.0, 0.0);
    reports.push_back(io::to_json(iso));
    all_pass = all_pass && iso.pass;
  }

  io::write_json(json{{"reports", reports}, {"pass", all_pass}},
                 (c.ensure_out() / "axioms.json").string());
  std::cout << "check: " << reports.size() << " reports, "
            << (all_pass ? "all passed" : "FAILURES") << "\n";
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voice transforms, coorbit norms and atomic decomposition on the "
               "upper-triangular group and the forward light cone"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--out", common.out, "output directory for artifacts");
  app.add_option("--config", common.config, "flat key=value parameter file");
  app.add_option("--seed", common.seed, "seed for randomized probes");

  auto* disc_cmd = app.add_subcommand("disc", "unit-disc experiments");
  disc_cmd->require_subcommand(1);
  double s = 4.0, r = 0.0, p = 2.0;
  int cases = 20, nr = 128, nt = 256;
  auto* dw = disc_cmd->add_subcommand("wavelet", "closed form vs quadrature");
  dw->add_option("--s", s);
  dw->add_option("--cases", cases);
  dw->add_option("--nr", nr);
  dw->add_option("--nt", nt);
  auto* dn = disc_cmd->add_subcommand("norms", "norm correspondence ratios");
  dn->add_option("--s", s);
  dn->add_option("--r", r);
  dn->add_option("--p", p);
  double a0 = 1.2, b0 = 0.25;
  int iters = 25;
  auto* dr = disc_cmd->add_subcommand("reconstruct", "atomic reconstruction");
  dr->add_option("--s", s);
  dr->add_option("--a0", a0);
  dr->add_option("--b0", b0);
  dr->add_option("--iters", iters);
  dr->add_option("--p", p);
  dr->add_option("--r", r);

  auto* cone_cmd = app.add_subcommand("cone", "light-cone experiments");
  cone_cmd->require_subcommand(1);
  int n = 3, probes = 58, hres = 8;
  double delta = 0.4, q = 2.0, sq = 3.0, sigma = 3.0;
  auto* cc = cone_cmd->add_subcommand("cover", "Whitney cover generation");
  cc->add_option("--n", n);
  cc->add_option("--delta", delta);
  cc->add_option("--probes", probes);
  auto* cb = cone_cmd->add_subcommand("besov", "Besov norms of the bump family");
  cb->add_option("--n", n);
  cb->add_option("--p", p);
  cb->add_option("--q", q);
  cb->add_option("--sigma", sigma);
  cb->add_option("--delta", delta);
  auto* ce = cone_cmd->add_subcommand("equivalence", "coorbit/Besov comparison");
  ce->add_option("--n", n);
  ce->add_option("--p", p);
  ce->add_option("--q", q);
  ce->add_option("--s", sq);
  ce->add_option("--delta", delta);
  ce->add_option("--hres", hres);

  double tol_closed = 1e-10, tol_quad = 1e-2;
  auto* check_cmd = app.add_subcommand("check", "axiom certification");
  check_cmd->add_option("--tol", tol_closed);
  check_cmd->add_option("--tol-quadrature", tol_quad);

  take_last_everywhere(&app);

  try {
    auto args = assemble_args(argc, argv, &common.config);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));

    if (dw->parsed()) return run_disc_wavelet(common, s, cases, nr, nt);
    if (dn->parsed()) return run_disc_norms(common, s, r, p);
    if (dr->parsed()) return run_disc_reconstruct(common, s, a0, b0, iters, p, r);
    if (cc->parsed()) return run_cone_cover(common, n, delta, probes);
    if (cb->parsed()) return run_cone_besov(common, n, p, q, sigma, delta);
    if (ce->parsed()) return run_cone_equivalence(common, n, p, q, sq, delta, hres);
    if (check_cmd->parsed()) return run_check(common, tol_closed, tol_quad);
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter validation failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
