// basisforge command-line tool: representation tables, regularity reports,
// sampling, exact expectations, construction experiments and the
// Schnirelmann layer, with JSON/CSV artifacts embedding their configs.

#include <cstdio>
#include <exception>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "basisforge/basisforge.hpp"
#include "basisforge/report.hpp"

namespace bf = basisforge;
using bf::u64;
using nlohmann::json;

namespace {

std::vector<u64> make_seeds(u64 master, unsigned count) {
  std::vector<u64> s(count);
  for (unsigned i = 0; i < count; ++i) s[i] = bf::split_seed(master, i);
  return s;
}

bf::ProbabilityAssignment parse_assignment(const std::string& text, u64 n_max) {
  auto starts = [&](const char* p) { return text.rfind(p, 0) == 0; };
  if (starts("uniform:")) return bf::uniform_assignment(std::stod(text.substr(8)), n_max);
  if (starts("counting:")) {
    auto A = bf::generate(bf::parse_generator(text.substr(9), n_max));
    return bf::counting_assignment(A, n_max);
  }
  if (starts("target:")) {
    auto f = bf::parse_target(text.substr(7), 2);
    return bf::target_assignment([f](double x) { return f(x); }, n_max);
  }
  if (starts("composition:")) {
    auto body = text.substr(12);
    auto sep = body.find(';');
    if (sep == std::string::npos)
      throw std::invalid_argument("composition assignment: expected composition:L;A");
    auto L = bf::generate(bf::parse_generator(body.substr(0, sep), n_max));
    u64 inner_h = L.count(n_max) > 0 ? L.count(n_max) - 1 : 1;
    auto A = bf::generate(bf::parse_generator(body.substr(sep + 1), std::max<u64>(inner_h, 1)));
    return bf::composition_assignment(L, A, n_max);
  }
  throw std::invalid_argument("unknown assignment: " + text);
}

// JSON numbers stay finite doubles; anything else is the tagged string.
json finite_or_tag(double v) {
  if (std::isfinite(v)) return json(v);
  return json("unbounded");
}

json band_json(const bf::Band& b) {
  return json{{"lo", b.lo}, {"hi", b.hi}, {"ratio", finite_or_tag(b.ratio())}};
}

int cmd_repfn(const std::string& gen, unsigned h, u64 nmax, u64 horizon,
              const std::string& out) {
  if (horizon == 0) horizon = nmax;
  json cfg{{"command", "repfn"}, {"gen", gen}, {"h", h}, {"nmax", nmax}, {"horizon", horizon}};
  auto A = bf::generate(bf::parse_generator(gen, horizon));
  auto t = bf::rep_table(A, h, nmax);
  auto rho = h >= 2 ? bf::rho_table(A, h, nmax) : t.r;
  u64 hf = bf::factorial_u64(h);
  bf::CsvWriter csv(out, bf::provenance_comment(cfg));
  csv.header({"n", "r", "s", "rho", "rho_hat_greedy", "nonexact"});
  for (u64 n = 0; n <= nmax; ++n) {
    auto i = static_cast<std::size_t>(n);
    u64 rh = h == 2 ? rho[i]
                    : (h >= 3 ? bf::rho_hat(A, h, n, bf::RhoHatMode::greedy) : rho[i]);
    csv.field(n);
    csv.field(t.r[i]);
    csv.field(t.s[i]);
    csv.field(rho[i]);
    csv.field(rh);
    csv.field(t.r[i] - hf * rho[i]);
    csv.end_row();
  }
  return 0;
}

int cmd_regvar(const std::string& gen, u64 horizon, const std::string& out,
               const std::string& evidence_csv, bool duality, unsigned sumset_h,
               bool integral) {
  auto A = bf::generate(bf::parse_generator(gen, horizon));
  auto rep = bf::classify(A);
  json cfg{{"command", "regvar"}, {"gen", gen}, {"horizon", horizon}};
  json body;
  body["is_OR"] = rep.is_OR;
  body["is_PI"] = rep.is_PI;
  body["is_OR_plus"] = rep.is_OR_plus;
  body["or_statistic"] = rep.or_statistic;
  body["pi_statistic"] = rep.pi_statistic;
  body["m_lower"] = finite_or_tag(rep.indices.m_lower);
  body["m_lower_degenerate"] = rep.indices.lower_degenerate;
  body["m_upper"] = finite_or_tag(rep.indices.m_upper);
  body["estimation_range"] = {rep.x_min, rep.x_max};
  if (duality) {
    auto d = bf::duality_check(A);
    body["duality"] = {
        {"ok", d.ok},
        {"low_side",
         {{"lhs", finite_or_tag(d.low_side.lhs)}, {"rhs", finite_or_tag(d.low_side.rhs)}}},
        {"upp_side",
         {{"lhs", finite_or_tag(d.upp_side.lhs)}, {"rhs", finite_or_tag(d.upp_side.rhs)}}}};
  }
  if (sumset_h >= 2) {
    auto s = bf::sumset_index_check(A, sumset_h, std::min<u64>(horizon, 1000000));
    body["sumset"] = {{"h", s.h},
                      {"s_indices", {s.s_lower, s.s_upper}},
                      {"a_indices", {s.a_lower, s.a_upper}},
                      {"ok", s.ok}};
  }
  if (integral) {
    auto r = bf::orplus_integral_check(A);
    body["integral"] = {{"band", band_json(r.band)}, {"bounded", r.bounded}};
  }
  bf::write_json(out, bf::wrap_artifact(cfg, body));
  if (!evidence_csv.empty()) {
    bf::CsvWriter csv(evidence_csv, bf::provenance_comment(cfg));
    csv.header({"x", "lambda", "statistic", "kind"});
    for (const auto& e : rep.evidence) {
      csv.field(e.x); csv.field(e.lambda); csv.field(e.statistic); csv.field(e.kind);
      csv.end_row();
    }
    for (const auto& e : rep.indices.evidence) {
      csv.field(e.x); csv.field(e.lambda); csv.field(e.statistic); csv.field(e.kind);
      csv.end_row();
    }
  }
  return 0;
}

int cmd_sample(const std::string& assign, u64 nmax, u64 seed, const std::string& out,
               bool strong_law, unsigned seeds, u64 master, double tolerance,
               unsigned threads) {
  auto pa = parse_assignment(assign, nmax);
  if (strong_law) {
    auto cps = bf::log_grid(std::max<u64>(nmax / 100, 16), nmax, 8);
    auto rep = bf::strong_law_check(pa, make_seeds(master, seeds), cps, tolerance, threads);
    json cfg{{"command", "sample"}, {"assign", assign},      {"nmax", nmax},
             {"seeds", seeds},      {"master_seed", master}, {"tolerance", tolerance}};
    json body;
    body["checkpoints"] = rep.checkpoints;
    body["expected"] = rep.expected;
    body["max_deviation"] = rep.max_deviation;
    body["ok"] = rep.ok;
    bf::write_json(out, bf::wrap_artifact(cfg, body));
    return rep.ok ? 0 : 1;
  }
  auto run = bf::sample(pa, seed);
  json cfg{{"command", "sample"}, {"assign", assign}, {"nmax", nmax}, {"seed", seed}};
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << bf::provenance_comment(cfg) << "\n";
  f << "# horizon=" << run.omega.horizon() << "\n";
  for (u64 a : run.omega.elements()) f << a << "\n";
  return 0;
}

int cmd_expect(const std::string& assign, unsigned h, u64 nmax, u64 lb,
               const std::string& out, const std::string& csv_path, const std::string& mc_gen,
               unsigned mc_seeds, u64 mc_master, unsigned grid_points, unsigned threads) {
  auto pa = parse_assignment(assign, nmax);
  auto er = bf::expected_r_table(pa, h, nmax);
  auto erho = bf::expected_rho_table(pa, h, nmax, lb);
  json cfg{{"command", "expect"}, {"assign", assign}, {"h", h}, {"n", nmax}, {"lb", lb}};
  json body{{"expected_r", er.back()}, {"expected_rho", erho.back()}};
  if (mc_seeds > 0) {
    // Monte Carlo experiment report with the stable schema: grid, per_n
    // stats across seeds, seeds, assignment descriptor.
    cfg["mc_gen"] = mc_gen;
    cfg["mc_seeds"] = mc_seeds;
    cfg["mc_master"] = mc_master;
    auto A = bf::generate(bf::parse_generator(mc_gen, nmax));
    auto grid = bf::log_grid(std::max<u64>(nmax / 100, 16), nmax, grid_points);
    auto mc = bf::monte_carlo_rep(A, h, grid, make_seeds(mc_master, mc_seeds), threads);
    json per_n = json::array();
    for (const auto& pt : mc.points)
      per_n.push_back({{"n", pt.n},
                       {"expected", pt.expected},
                       {"mean", pt.mean},
                       {"min", pt.min},
                       {"max", pt.max},
                       {"se", pt.se},
                       {"ratio", pt.ratio}});
    body["experiment"] = {{"grid", grid},
                          {"per_n", per_n},
                          {"seeds", mc.seeds},
                          {"assignment", pa.source},
                          {"fraction_within_4se", mc.fraction_within_4se}};
  }
  bf::write_json(out, bf::wrap_artifact(cfg, body));
  if (!csv_path.empty()) {
    bf::CsvWriter csv(csv_path, bf::provenance_comment(cfg));
    csv.header({"n", "expected_r", "expected_rho"});
    for (u64 n = 0; n <= nmax; ++n) {
      csv.field(n);
      csv.field(er[static_cast<std::size_t>(n)]);
      csv.field(erho[static_cast<std::size_t>(n)]);
      csv.end_row();
    }
  }
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_json,
                   const std::string& out_csv, unsigned threads) {
  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument("cannot read config " + config_path);
  json cfg = json::parse(in);

  unsigned h = cfg.value("h", 2u);
  unsigned ell_max = cfg.value("ell_max", 0u);
  auto f = bf::parse_target(cfg.value("target", std::string("power-log")), h);
  bf::ConcentrationConfig cc;
  cc.params.m1 = cfg.value("m1", 2.0);
  cc.params.m2 = cfg.value("m2", 2.0);
  cc.seed_eps = cfg.value("eps", 0.1);
  cc.construction_seed = cfg.value("construction_seed", 1u);
  cc.threads = threads;
  u64 master = cfg.value("master_seed", 12345u);
  unsigned n_seeds = cfg.value("seeds", 10u);
  u64 grid_lo = cfg.value("grid_lo", 1000u);
  u64 grid_hi = cfg.value("grid_hi", 100000u);
  unsigned grid_points = cfg.value("grid_points", 21u);

  auto grid = bf::log_grid(grid_lo, grid_hi, grid_points);
  auto rep = bf::concentration_experiment(f, h, ell_max, make_seeds(master, n_seeds), grid, cc);

  json body;
  body["construction"] = {{"n1", rep.construction.n1},
                          {"q1", rep.construction.q1},
                          {"q2", rep.construction.q2},
                          {"sandwich_from", rep.construction.sandwich_from},
                          {"theta_band", band_json(rep.construction.theta_band)},
                          {"a_size", rep.construction.a.size()}};
  body["product_rule_ok"] = rep.product_rule_ok;
  for (unsigned l = 0; l <= ell_max; ++l) {
    body["ell"].push_back({{"ell", l},
                           {"ratio_band", band_json(rep.ratio_band[l])},
                           {"positive_fraction", rep.positive_fraction[l]}});
  }
  json zeros = json::array();
  for (const auto& s : rep.per_seed) zeros.push_back({{"seed", s.seed}, {"n_zero", s.n_zero}});
  body["per_seed_n_zero"] = zeros;
  bf::write_json(out_json, bf::wrap_artifact(cfg, body));

  if (!out_csv.empty()) {
    bf::CsvWriter csv(out_csv, bf::provenance_comment(cfg));
    csv.header({"ell", "seed", "n", "r", "A_n", "ratio"});
    for (unsigned l = 0; l <= ell_max; ++l)
      for (const auto& s : rep.per_seed)
        for (std::size_t i = 0; i < rep.grid.size(); ++i) {
          u64 n = rep.grid[i];
          u64 an = rep.construction.a.count(n);
          double ratio = static_cast<double>(s.r_at_grid[l][i]) * static_cast<double>(n) /
                         std::pow(static_cast<double>(an), static_cast<double>(h + l));
          csv.field(static_cast<u64>(l));
          csv.field(s.seed);
          csv.field(n);
          csv.field(s.r_at_grid[l][i]);
          csv.field(an);
          csv.field(ratio);
          csv.end_row();
        }
  }
  return 0;
}

int cmd_schnirelmann(const std::string& gen, unsigned h, u64 nmax, const std::string& out_csv,
                     const std::string& out_json, double eps, unsigned basis_hmax,
                     u64 basis_x) {
  json cfg{{"command", "schnirelmann"}, {"gen", gen}, {"h", h}, {"nmax", nmax}, {"eps", eps}};
  auto A = bf::generate(bf::parse_generator(gen, nmax));
  auto t = bf::singular_series(A, h, nmax);
  if (!out_csv.empty()) {
    bf::CsvWriter csv(out_csv, bf::provenance_comment(cfg));
    csv.header({"n", "r", "J", "Sigma"});
    for (u64 n = 0; n <= nmax; ++n) {
      auto i = static_cast<std::size_t>(n);
      csv.field(n); csv.field(t.r[i]); csv.field(t.j[i]); csv.field(t.sigma[i]);
      csv.end_row();
    }
  }
  json body;
  auto ces = bf::cesaro_criterion(t, eps, bf::log_grid(std::max<u64>(nmax / 1000, 16), nmax, 48));
  body["cesaro"] = {{"eps", ces.eps},
                    {"bounded", ces.bounded},
                    {"top_decade_max", ces.top_decade_max},
                    {"mid_decade_max", ces.mid_decade_max}};
  if (basis_hmax >= 1) {
    auto b = bf::basis_check(A, basis_hmax, basis_x == 0 ? nmax : basis_x);
    body["basis"] = {{"coverage", b.coverage},
                     {"order", b.order},
                     {"first_gap", b.first_gap},
                     {"schnirelmann_density", b.schnirelmann_density}};
  }
  bf::write_json(out_json, bf::wrap_artifact(cfg, body));
  return 0;
}

int cmd_selftest();

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"basisforge: representation functions, regular variation and "
               "probabilistic sequence spaces"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // keep --h free for the order flag
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: hardware, or BASIS_FORGE_THREADS)");

  std::string gen = "squares", out = "out.json", evidence_csv, assign = "uniform:0.5";
  std::string out_csv, config_path;
  unsigned h = 2, seeds = 100, sumset_h = 0, basis_hmax = 0;
  u64 nmax = 1000, horizon = 0, seed = 1, master = 12345, lb = 0, basis_x = 0;
  double tolerance = 0.1, eps = 1.0;
  bool strong_law = false, duality = false, integral = false;

  auto* c_rep = app.add_subcommand("repfn", "representation-function CSV table");
  c_rep->set_help_flag("--help", "print help");
  c_rep->add_option("--gen", gen, "generator spec");
  c_rep->add_option("--h", h, "order");
  c_rep->add_option("--nmax", nmax, "table limit");
  c_rep->add_option("--horizon", horizon, "sequence horizon (default nmax)");
  c_rep->add_option("--out", out, "output CSV path")->required();

  auto* c_reg = app.add_subcommand("regvar", "regularity report (JSON)");
  c_reg->set_help_flag("--help", "print help");
  c_reg->add_option("--gen", gen)->required();
  c_reg->add_option("--horizon", horizon)->required();
  c_reg->add_option("--out", out);
  c_reg->add_option("--evidence-csv", evidence_csv, "dump window statistics");
  c_reg->add_flag("--duality", duality, "include the index duality check");
  c_reg->add_option("--sumset-h", sumset_h, "include sumset index scaling at this h");
  c_reg->add_flag("--integral", integral, "include the OR+ integral criterion");

  auto* c_sam = app.add_subcommand("sample", "sample a random sequence / strong-law check");
  c_sam->set_help_flag("--help", "print help");
  c_sam->add_option("--assign", assign, "assignment spec")->required();
  c_sam->add_option("--nmax", nmax)->required();
  c_sam->add_option("--seed", seed);
  c_sam->add_option("--out", out)->required();
  c_sam->add_flag("--strong-law", strong_law, "run the strong-law check across seeds");
  c_sam->add_option("--seeds", seeds, "seed count for --strong-law");
  c_sam->add_option("--master", master, "master seed (seed_i = hash(master, i))");
  c_sam->add_option("--tolerance", tolerance);

  std::string mc_gen = "squares";
  unsigned mc_seeds = 0, grid_points = 13;
  u64 mc_master = 424242;
  auto* c_exp = app.add_subcommand("expect", "exact expectations in a sequence space");
  c_exp->set_help_flag("--help", "print help");
  c_exp->add_option("--assign", assign)->required();
  c_exp->add_option("--h", h);
  c_exp->add_option("--n", nmax)->required();
  c_exp->add_option("--lb", lb, "lower bound for the exact-representation cut");
  c_exp->add_option("--out", out);
  c_exp->add_option("--csv", out_csv, "full table CSV");
  c_exp->add_option("--mc-gen", mc_gen, "sequence for a Monte Carlo experiment report");
  c_exp->add_option("--mc-seeds", mc_seeds, "seed count (0 = skip the Monte Carlo block)");
  c_exp->add_option("--mc-master", mc_master, "master seed for seed splitting");
  c_exp->add_option("--grid-points", grid_points, "log-grid size for the experiment");

  auto* c_xpr = app.add_subcommand("experiment", "construction + concentration experiment");
  c_xpr->set_help_flag("--help", "print help");
  c_xpr->add_option("--config", config_path, "JSON config")->required();
  c_xpr->add_option("--out", out, "output JSON");
  c_xpr->add_option("--csv", out_csv, "per-point CSV");

  auto* c_sch = app.add_subcommand("schnirelmann", "singular integral/series layer");
  c_sch->set_help_flag("--help", "print help");
  c_sch->add_option("--gen", gen)->required();
  c_sch->add_option("--h", h);
  c_sch->add_option("--nmax", nmax)->required();
  c_sch->add_option("--csv", out_csv, "n,r,J,Sigma table");
  c_sch->add_option("--out", out, "criterion JSON");
  c_sch->add_option("--eps", eps, "Cesàro exponent");
  c_sch->add_option("--basis-hmax", basis_hmax, "include coverage report up to this h");
  c_sch->add_option("--basis-x", basis_x, "coverage range (default nmax)");

  app.add_subcommand("selftest", "oracle-equivalence suite");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) {
    // the worker pool reads this at call sites
    setenv("BASIS_FORGE_THREADS", std::to_string(threads).c_str(), 1);
  }

  try {
    if (c_rep->parsed()) return cmd_repfn(gen, h, nmax, horizon, out);
    if (c_reg->parsed())
      return cmd_regvar(gen, horizon, out, evidence_csv, duality, sumset_h, integral);
    if (c_sam->parsed())
      return cmd_sample(assign, nmax, seed, out, strong_law, seeds, master, tolerance, threads);
    if (c_exp->parsed())
      return cmd_expect(assign, h, nmax, lb, out, out_csv, mc_gen, mc_seeds, mc_master,
                        grid_points, threads);
    if (c_xpr->parsed()) return cmd_experiment(config_path, out, out_csv, threads);
    if (c_sch->parsed())
      return cmd_schnirelmann(gen, h, nmax, out_csv, out, eps, basis_hmax, basis_x);
    return cmd_selftest();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

namespace {

int cmd_selftest() {
  using namespace basisforge;
  std::mt19937_64 rng(424242);
  std::printf("selftest: convolution vs tuple enumeration\n");
  for (int trial = 0; trial < 12; ++trial) {
    u64 H = 600;
    double density = 0.05 + 0.15 * std::uniform_real_distribution<>(0, 1)(rng);
    std::vector<u64> elems;
    for (u64 n = 0; n <= H; ++n)
      if (std::uniform_real_distribution<>(0, 1)(rng) < density) elems.push_back(n);
    if (elems.empty()) elems.push_back(0);
    Sequence A(std::move(elems), H);
    for (unsigned h : {2u, 3u}) {
      auto t = rep_table(A, h, H);
      for (u64 n : {u64{17}, u64{100}, u64{299}, u64{600}}) {
        // oracle: recursive ordered-tuple count
        std::function<u64(unsigned, u64)> cnt = [&](unsigned left, u64 rem) -> u64 {
          if (left == 0) return rem == 0 ? 1 : 0;
          u64 acc = 0;
          for (u64 a : A.elements()) {
            if (a > rem) break;
            acc += cnt(left - 1, rem - a);
          }
          return acc;
        };
        if (t.r[static_cast<std::size_t>(n)] != cnt(h, n)) {
          std::printf("selftest FAILED at h=%u n=%llu\n", h, (unsigned long long)n);
          return 1;
        }
      }
      // greedy vs exact maximal-disjoint-family ordering
      for (u64 n : {u64{60}, u64{150}}) {
        u64 g = rho_hat(A, h, n, RhoHatMode::greedy);
        u64 m = 0;
        bool capped = false;
        try {
          m = rho_hat(A, h, n, RhoHatMode::exact_max, 2000);
        } catch (const std::invalid_argument&) {
          capped = true;
        }
        if (!capped && (g > m || m > n / h)) {
          std::printf("selftest FAILED: rho_hat ordering at h=%u n=%llu\n", h,
                      (unsigned long long)n);
          return 1;
        }
      }
    }
  }
  std::printf("selftest: singular integral nested-sum oracle\n");
  {
    auto A = generate(parse_generator("squares", 400));
    auto J = singular_integral(A, 2, 400).j;
    auto beta = [&](u64 k) {
      return static_cast<double>(A.count(k)) / static_cast<double>(k + 1);
    };
    for (u64 n : {u64{10}, u64{123}, u64{400}}) {
      double direct = 0.0;
      for (u64 k = 0; k <= n; ++k) direct += beta(k) * beta(n - k);
      if (std::abs(direct - J[static_cast<std::size_t>(n)]) > 1e-9 * (1.0 + direct)) {
        std::printf("selftest FAILED: J mismatch at n=%llu\n", (unsigned long long)n);
        return 1;
      }
    }
  }
  std::printf("selftest: identity suite\n");
  {
    auto A = generate(parse_generator("primes", 2000));
    auto t = rep_table(A, 3, 2000);
    auto rho = rho_table(A, 3, 2000);
    for (u64 n = 0; n <= 2000; ++n) {
      u64 ne = t.r[static_cast<std::size_t>(n)] - 6 * rho[static_cast<std::size_t>(n)];
      (void)ne;  // mere evaluation checks the subtraction is in range
    }
    auto rep = extension_identity_check(A, 8, 2, 50);
    if (!rep.ok) {
      std::printf("selftest FAILED: extension identity\n");
      return 1;
    }
  }
  std::printf("selftest OK\n");
  return 0;
}

}  // namespace
