#include "sslo/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "sslo/bound_evaluators.hpp"
#include "sslo/common.hpp"
#include "sslo/convex_geometry.hpp"
#include "sslo/gevrey_cutoffs.hpp"
#include "sslo/reports.hpp"
#include "sslo/simd/kernels.hpp"
#include "sslo/sslo_spectrum.hpp"
#include "sslo/wave_packets.hpp"
#include "sslo/whitney_localsine.hpp"

namespace sslo::cli {

using nlohmann::json;

std::string command_name(Command c) {
  switch (c) {
    case Command::BasisVerify:
      return "basis-verify";
    case Command::Spectrum:
      return "spectrum";
    case Command::Partition:
      return "partition";
    case Command::Counting:
      return "counting";
    case Command::BoundsSweep:
      return "bounds-sweep";
  }
  return "?";
}

json RunConfig::to_json() const {
  json j = {{"command", command_name(command)},
            {"d", d},
            {"W", W},
            {"n", n},
            {"eps", eps},
            {"delta", delta},
            {"body", body},
            {"kmax", k_max},
            {"delta_min", delta_min},
            {"lattice", lattice},
            {"samples", samples},
            {"rho_min", rho_min},
            {"rho_max", rho_max},
            {"full_records", full_records},
            {"seed", seed}};
  j["r"] = r ? json(*r) : json(nullptr);
  j["eta"] = eta ? json(*eta) : json(nullptr);
  return j;
}

namespace {

void need(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

geometry::ConvexBody make_body(const RunConfig& c) { return geometry::ConvexBody::from_json(c.body, c.d); }

}  // namespace

void RunConfig::validate() const {
  need(d >= 1, "--d must be >= 1");
  need(n >= 0, "--n must be nonnegative");
  for (double e : eps) need(e > 0.0 && e < 0.5, "--eps values must lie in (0, 1/2)");
  switch (command) {
    case Command::BasisVerify:
      need(k_max >= 0 && k_max <= 4096, "--kmax must lie in [0, 4096]");
      need(delta_min > 0.0 && delta_min <= 0.5, "--delta-min must lie in (0, 1/2]");
      break;
    case Command::Spectrum:
      need(d == 1 || d == 2, "spectrum supports --d 1 or 2");
      if (d == 1) {
        need(W.size() == 1 && !r, "spectrum --d 1 needs exactly one --W and no --r");
        need(W[0] > 0.0, "--W must be positive");
      } else {
        need(W.empty() && r.has_value(), "spectrum --d 2 needs --r and no --W");
        need(*r > 0.0, "--r must be positive");
        (void)make_body(*this);
      }
      break;
    case Command::Partition:
      need(d == 1 || d == 2, "partition supports --d 1 or 2");
      need(r.has_value() && W.empty(), "partition needs --r and no --W");
      need(*r >= 1.0, "--r must be >= 1");
      need(delta > 0.0 && delta < 0.5, "--delta must lie in (0, 1/2)");
      need(!eta || *eta > 0.0, "--eta must be positive");
      need(k_max >= 0, "--kmax must be nonnegative");
      need(delta_min > 0.0 && delta_min <= delta / *r, "--delta-min must not exceed delta / r");
      (void)make_body(*this);
      break;
    case Command::Counting:
      need(W.empty(), "counting takes no --W");
      need(lattice == "half" || lattice == "integer", "--lattice must be half or integer");
      need(eta.has_value() && *eta >= 1.0, "counting needs --eta >= 1");
      if (samples > 0) {
        need(!r, "counting takes either --r or --samples");
        need(rho_min > 0.0 && rho_max >= rho_min, "--rho-min/--rho-max must satisfy 0 < min <= max");
      } else {
        need(r.has_value() && *r > 0.0, "counting needs a positive --r (or --samples)");
      }
      (void)make_body(*this);
      break;
    case Command::BoundsSweep:
      need(d == 1, "bounds-sweep supports --d 1");
      need(!W.empty() && !r, "bounds-sweep needs --W (repeatable) and no --r");
      for (double w : W) need(w > 0.0, "--W must be positive");
      need(!eps.empty(), "bounds-sweep needs --eps (repeatable)");
      break;
  }
}

json parse_body_arg(const std::string& text) {
  if (text == "ball" || text == "l1") return {{"kind", text}, {"radius", 1.0}};
  if (text == "cube") return {{"kind", "cube"}, {"halfwidth", 1.0}};
  std::string source = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::invalid_argument("cannot read body file " + text.substr(1));
    std::ostringstream os;
    os << in.rdbuf();
    source = os.str();
  }
  try {
    return json::parse(source);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("body spec is not valid JSON: ") + e.what());
  }
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv) {
  CLI::App app{"Spatio-spectral limiting lab"};
  app.require_subcommand(1);
  RunConfig c;
  std::string body_text;
  std::optional<double> r;
  std::optional<double> eta;
  std::string out;

  struct Sub {
    Command command;
    CLI::App* app;
  };
  std::vector<Sub> subs = {
      {Command::BasisVerify, app.add_subcommand("basis-verify", "Gram matrix and Fourier decay of the local sine basis")},
      {Command::Spectrum, app.add_subcommand("spectrum", "Eigenvalues of the limiting operator")},
      {Command::Partition, app.add_subcommand("partition", "Low / Res / Hi classification of wave packets")},
      {Command::Counting, app.add_subcommand("counting", "Lattice point counts against the volume sandwich")},
      {Command::BoundsSweep, app.add_subcommand("bounds-sweep", "One-dimensional bounds against computed spectra")},
  };
  for (auto& s : subs) {
    CLI::App* a = s.app;
    a->add_option("--d", c.d, "dimension");
    a->add_option("--W", c.W, "bandwidth (repeatable)");
    a->add_option("--r", r, "dilation of the frequency body");
    a->add_option("--n", c.n, "quadrature nodes per axis");
    a->add_option("--eps", c.eps, "threshold (repeatable)");
    a->add_option("--delta", c.delta, "partition scale");
    a->add_option("--eta", eta, "frequency box padding");
    a->add_option("--body", body_text, "JSON body spec, @file, or ball|cube|l1");
    a->add_option("--kmax", c.k_max, "largest frequency index per interval");
    a->add_option("--delta-min", c.delta_min, "smallest Whitney interval length");
    a->add_option("--lattice", c.lattice, "half or integer");
    a->add_option("--samples", c.samples, "random dilations drawn in [rho-min, rho-max]");
    a->add_option("--rho-min", c.rho_min);
    a->add_option("--rho-max", c.rho_max);
    a->add_flag("--full-records", c.full_records, "emit every envelope record");
    a->add_option("--threads", c.threads, "worker threads (0 = hardware)");
    a->add_option("--seed", c.seed, "seed for randomized sampling");
    a->add_option("--out", out, "output directory (default $SSLO_LAB_OUT or ./sslo-out)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }
  for (auto& s : subs)
    if (s.app->parsed()) c.command = s.command;
  c.r = r;
  c.eta = eta;
  if (!body_text.empty()) c.body = parse_body_arg(body_text);
  if (out.empty()) {
    const char* env = std::getenv("SSLO_LAB_OUT");
    out = env && *env ? env : "sslo-out";
  }
  c.output_dir = out;
  c.validate();
  return c;
}

namespace {

struct Emitter {
  const RunConfig& config;
  std::string hash;
  RunResult result;

  void csv(const reports::CsvTable& t) {
    result.artifacts.push_back(reports::write_artifact(config.output_dir, command_name(config.command) + "-" + hash + ".csv",
                                                       t.render(hash)));
  }
  void summary(json j) {
    j["config"] = config.to_json();
    j["config_hash"] = hash;
    j["exit_code"] = result.exit_code;
    result.artifacts.push_back(reports::write_artifact(
        config.output_dir, command_name(config.command) + "-" + hash + ".json", j.dump(2) + "\n"));
  }
};

json spectrum_meta(const spectrum::EigenSequence& e) {
  return {{"trace", e.trace()},
          {"count", e.values.size()},
          {"resolution", e.resolution},
          {"converged", e.converged},
          {"convergence_delta", e.convergence_delta},
          {"clamp", e.clamp.to_json()},
          {"warnings", e.warnings}};
}

void run_basis_verify(Emitter& em) {
  const RunConfig& c = em.config;
  gevrey::CutoffProfile profile;
  localsine::BasisTruncation trunc{c.delta_min, c.k_max};
  auto indices = trunc.indices();
  const int order = c.n > 0 ? c.n : 4 * c.k_max + 16;
  const double dev = localsine::gram_deviation(localsine::gram_matrix(indices, profile, order));

  reports::CsvTable t({"j", "k", "xi", "value", "bound", "ratio"});
  double worst = 0.0;
  for (int j = -3; j <= 3; ++j) {
    for (int k : {0, 1, 2, 8, 32}) {
      if (k > c.k_max) continue;
      const double span = 500.0 / localsine::whitney_interval(j).delta;
      const auto rep = localsine::verify_fourier_decay({j, k}, -span, span, 4001, profile, {}, c.full_records);
      worst = std::max(worst, rep.worst.ratio);
      const auto& recs = c.full_records ? rep.records : std::vector<localsine::EnvelopeRecord>{rep.worst};
      for (const auto& r : recs) t.row().add(r.j).add(r.k).add(r.xi).add(r.value).add(r.bound).add(r.ratio);
    }
  }
  const bool ok = dev <= 1e-8 && worst <= 1.0;
  em.result.exit_code = ok ? kExitOk : kExitViolation;
  em.csv(t);
  em.summary({{"basis_size", indices.size()},
              {"quad_order", order},
              {"gram_deviation", dev},
              {"gram_ok", dev <= 1e-8},
              {"decay_worst_ratio", worst},
              {"decay_ok", worst <= 1.0},
              {"simd_backend", simd::backend_name(simd::active_backend())}});
  std::ostringstream os;
  os << "basis size " << indices.size() << ", gram deviation " << reports::format_double(dev)
     << ", worst decay ratio " << reports::format_double(worst);
  em.result.summary = os.str();
}

void run_spectrum(Emitter& em) {
  const RunConfig& c = em.config;
  spectrum::EigenSequence e;
  json meta;
  if (c.d == 1) {
    e = spectrum::eigs_1d(c.W[0], c.n > 0 ? c.n : 512, true);
    meta = spectrum_meta(e);
    meta["expected_trace"] = c.W[0] / kPi;
  } else {
    const auto body = make_body(c);
    spectrum::Nystrom2dOptions opt;
    opt.n = c.n > 0 ? c.n : 96;
    opt.threads = c.threads;
    e = spectrum::eigs_body_2d(body, *c.r, opt);
    meta = spectrum_meta(e);
    meta["expected_trace"] = body.volume(*c.r) / (4.0 * kPi * kPi);
  }
  reports::CsvTable t({"k", "lambda"});
  for (std::size_t k = 0; k < e.values.size(); ++k) t.row().add(k).add(e.values[k]);
  em.csv(t);
  json counts = json::object();
  for (double ep : c.eps)
    counts[reports::format_double(ep)] = {{"above", spectrum::count_above(e, ep)},
                                          {"transition", spectrum::count_transition(e, ep)}};
  meta["counts"] = counts;
  em.summary(meta);
  em.result.summary = "trace " + reports::format_double(e.trace()) + " over " + std::to_string(e.values.size()) + " values";
}

void run_partition(Emitter& em) {
  const RunConfig& c = em.config;
  const auto body = make_body(c);
  const double eta = c.eta ? *c.eta : packets::eta_of_delta(c.delta);
  localsine::BasisTruncation trunc{c.delta_min, c.k_max};
  const auto p = packets::enumerate_partition(body, *c.r, c.delta, eta, trunc, c.threads);
  std::vector<std::string> cols{"label"};
  for (int i = 0; i < c.d; ++i) {
    cols.push_back("j" + std::to_string(i + 1));
    cols.push_back("k" + std::to_string(i + 1));
  }
  reports::CsvTable t(cols);
  auto emit = [&](packets::Label label, const std::vector<packets::PacketIndex>& v) {
    for (const auto& nu : v) {
      t.row().add(std::string(packets::label_name(label)));
      for (int i = 0; i < c.d; ++i) t.add(nu.j[i]).add(nu.k[i]);
    }
  };
  emit(packets::Label::Low, p.low);
  emit(packets::Label::Res, p.res);
  em.csv(t);
  em.summary(p.to_json());
  em.result.summary = "low " + std::to_string(p.low.size()) + ", res " + std::to_string(p.res.size()) + ", hi " +
                      std::to_string(p.hi_count);
}

void run_counting(Emitter& em) {
  const RunConfig& c = em.config;
  const auto body = make_body(c);
  const auto lattice = c.lattice == "half" ? geometry::Lattice::half_integer(c.d) : geometry::Lattice::integer(c.d);
  std::vector<double> rhos;
  if (c.samples > 0) {
    std::mt19937_64 gen(c.seed);
    std::uniform_real_distribution<double> dist(c.rho_min, c.rho_max);
    for (int i = 0; i < c.samples; ++i) rhos.push_back(dist(gen));
  } else {
    rhos.push_back(*c.r);
  }
  reports::CsvTable t({"rho", "eta", "inner", "boundary", "volume", "e0", "lemma_error", "inner_ok", "boundary_ok"});
  int failures = 0;
  for (double rho : rhos) {
    const auto s = geometry::lattice_sandwich(body, rho, lattice, *c.eta);
    failures += s.ok() ? 0 : 1;
    t.row()
        .add(rho)
        .add(*c.eta)
        .add(static_cast<long long>(s.counts.inner))
        .add(static_cast<long long>(s.counts.boundary))
        .add(s.volume)
        .add(s.e0)
        .add(s.lemma_error)
        .add(s.inner_ok ? 1 : 0)
        .add(s.boundary_ok ? 1 : 0);
  }
  em.result.exit_code = failures ? kExitViolation : kExitOk;
  em.csv(t);
  em.summary({{"dilations", rhos.size()}, {"failures", failures}, {"body", body.to_json()}});
  em.result.summary = std::to_string(rhos.size() - failures) + "/" + std::to_string(rhos.size()) + " dilations pass";
}

void run_bounds_sweep(Emitter& em) {
  const RunConfig& c = em.config;
  const auto reps = bounds::sweep_1d(c.W, c.eps, c.n > 0 ? c.n : 512);
  reports::CsvTable t({"name", "W", "eps", "bound", "empirical", "center", "two_sided", "asserted", "satisfied", "slack"});
  int violations = 0;
  json fits = json::array();
  for (const auto& r : reps) {
    auto param = [&](const char* key) {
      auto it = r.params.find(key);
      return it == r.params.end() ? NAN : it->second;
    };
    t.row()
        .add(r.name)
        .add(param("W"))
        .add(param("eps"))
        .add(r.bound_value)
        .add(r.empirical_value)
        .add(r.center)
        .add(r.two_sided ? 1 : 0)
        .add(r.asserted ? 1 : 0)
        .add(r.satisfied ? 1 : 0)
        .add(r.slack);
    if (r.asserted && !r.satisfied) ++violations;
    if (r.name == "decay_1d_fit") fits.push_back(r.params);
  }
  em.result.exit_code = violations ? kExitViolation : kExitOk;
  em.csv(t);
  em.summary({{"reports", reps.size()}, {"violations", violations}, {"decay_fits", fits}});
  em.result.summary = std::to_string(reps.size()) + " comparisons, " + std::to_string(violations) + " violated";
}

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  set_default_thread_count(config.threads);
  Emitter em{config, reports::config_hash(config.to_json()), {}};
  switch (config.command) {
    case Command::BasisVerify:
      run_basis_verify(em);
      break;
    case Command::Spectrum:
      run_spectrum(em);
      break;
    case Command::Partition:
      run_partition(em);
      break;
    case Command::Counting:
      run_counting(em);
      break;
    case Command::BoundsSweep:
      run_bounds_sweep(em);
      break;
  }
  return em.result;
}

int main_entry(int argc, const char* const* argv) {
  std::optional<RunConfig> config;
  try {
    config = parse_args(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "sslo-lab: configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (!config) return kExitOk;
  try {
    const RunResult res = run(*config);
    std::cout << command_name(config->command) << ": " << res.summary << "\n";
    for (const auto& p : res.artifacts) std::cout << "  wrote " << p.string() << "\n";
    if (res.exit_code == kExitViolation) std::cerr << "sslo-lab: bound violated\n";
    return res.exit_code;
  } catch (const reports::ArtifactConflict& e) {
    std::cerr << "sslo-lab: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "sslo-lab: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "sslo-lab: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace sslo::cli
