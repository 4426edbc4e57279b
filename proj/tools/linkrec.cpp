// Command-line front end: synth, features, train, recommend, evaluate, oracle-check.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "linkrec/baselines.hpp"
#include "linkrec/em.hpp"
#include "linkrec/error.hpp"
#include "linkrec/evaluation.hpp"
#include "linkrec/features.hpp"
#include "linkrec/inference.hpp"
#include "linkrec/io.hpp"
#include "linkrec/latent.hpp"
#include "linkrec/oracle/latent_oracle.hpp"
#include "linkrec/parallel.hpp"
#include "linkrec/ranking.hpp"
#include "linkrec/rng.hpp"
#include "linkrec/synth.hpp"
#include "linkrec/training.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace linkrec;

namespace {

struct Params {
  double alpha = 0.5;
  int locality = 4;
  double beta = 0.05;
  int kmax = 4;
  std::string k_frac = "0.005";
  std::string rho = "1";
  double epsilon = 1e-6;
  int max_iter = 500;
  int restarts = 3;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string piece_mass = "posterior";
  std::string out_dir = ".";
};

void add_model_flags(CLI::App* cmd, Params& p) {
  cmd->add_option("--alpha", p.alpha, "Decay factor for network value")->capture_default_str();
  cmd->add_option("--locality", p.locality, "Farthest neighbor degree X counted in network value")->capture_default_str();
  cmd->add_option("--beta", p.beta, "Katz walk weight")->capture_default_str();
  cmd->add_option("--kmax", p.kmax, "Longest walk counted by Katz")->capture_default_str();
  cmd->add_option("--k-frac", p.k_frac, "K as a fraction of candidates (comma list for evaluate)")->capture_default_str();
  cmd->add_option("--rho", p.rho, "Cost multiplier (comma list for evaluate)")->capture_default_str();
  cmd->add_option("--epsilon", p.epsilon, "EM convergence threshold on |dH|")->capture_default_str();
  cmd->add_option("--max-iter", p.max_iter, "EM iteration cap")->capture_default_str();
  cmd->add_option("--restarts", p.restarts, "EM random restarts")->capture_default_str();
  cmd->add_option("--seed", p.seed, "Random seed")->capture_default_str();
  cmd->add_option("--threads", p.threads, "Worker threads (0 = all cores)")->capture_default_str();
  cmd->add_option("--piece-mass", p.piece_mass, "M-step piece weighting")
      ->check(CLI::IsMember({"posterior", "unit"}))
      ->capture_default_str();
  cmd->add_option("--out-dir", p.out_dir, "Output directory")->capture_default_str();
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::kInvalidArgument, "cli", std::string("bad ") + what + " value '" + item + "'");
    }
  }
  if (out.empty()) fail(ErrorKind::kInvalidArgument, "cli", std::string("empty ") + what + " list");
  return out;
}

double single(const std::string& s, const char* what) {
  const auto v = parse_list(s, what);
  if (v.size() != 1) fail(ErrorKind::kInvalidArgument, "cli", std::string(what) + " takes one value here");
  return v[0];
}

unsigned threads_of(const Params& p) { return p.threads == 0 ? default_threads() : p.threads; }

ValueConfig value_cfg(const Params& p) {
  ValueConfig v;
  v.alpha = p.alpha;
  v.locality = p.locality;
  validate(v);
  return v;
}

KatzConfig katz_cfg(const Params& p) {
  KatzConfig k{p.beta, p.kmax};
  validate(k);
  return k;
}

EmConfig em_cfg(const Params& p) {
  EmConfig e;
  e.epsilon = p.epsilon;
  e.max_iter = p.max_iter;
  e.restarts = p.restarts;
  e.seed = p.seed;
  e.threads = threads_of(p);
  e.piece_mass = p.piece_mass == "unit" ? PieceMass::kUnit : PieceMass::kPosterior;
  validate(e);
  return e;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

ordered_json manifest(const std::string& sub, const Params& p) {
  ordered_json m;
  m["tool"] = "linkrec";
  m["version"] = LINKREC_VERSION;
  m["subcommand"] = sub;
  m["parameters"] = {{"alpha", p.alpha},       {"locality", p.locality}, {"beta", p.beta},
                     {"kmax", p.kmax},         {"k_frac", p.k_frac},     {"rho", p.rho},
                     {"epsilon", p.epsilon},   {"max_iter", p.max_iter}, {"restarts", p.restarts},
                     {"seed", p.seed},         {"threads", threads_of(p)}, {"piece_mass", p.piece_mass}};
  m["inputs"] = ordered_json::object();
  m["outputs"] = ordered_json::array();
  return m;
}

void write_manifest(ordered_json m, const std::string& path) {
  m["timestamp"] = timestamp();
  io::atomic_write(path, m.dump(2) + "\n");
}

std::string out_path(const Params& p, const std::string& name) {
  fs::create_directories(p.out_dir);
  return (fs::path(p.out_dir) / name).string();
}

struct GraphInputs {
  std::string edges, users, profiles;
};

void add_graph_inputs(CLI::App* cmd, GraphInputs& g) {
  cmd->add_option("--edges", g.edges, "Edges CSV (u,v,month)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--users", g.users, "Users CSV (user,reg_month[,m,intrinsic])")->required()->check(CLI::ExistingFile);
  cmd->add_option("--profiles", g.profiles, "Profiles CSV (user,terms)")->required()->check(CLI::ExistingFile);
}

void note_inputs(ordered_json& m, const GraphInputs& g) {
  m["inputs"]["edges"] = g.edges;
  m["inputs"]["users"] = g.users;
  m["inputs"]["profiles"] = g.profiles;
}

std::pair<int, int> parse_months(const std::string& s) {
  if (s.empty()) return {0, 0};
  const auto dash = s.find('-');
  try {
    if (dash == std::string::npos) {
      const int m = std::stoi(s);
      return {m, m};
    }
    return {std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1))};
  } catch (const std::exception&) {
    fail(ErrorKind::kInvalidArgument, "cli", "bad --months '" + s + "' (expected t or a-b)");
  }
}

std::string fmt_tag(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kConfiguration: return 2;
    case ErrorKind::kParse:
    case ErrorKind::kIntegrity:
    case ErrorKind::kNotFound:
    case ErrorKind::kIo: return 3;
    case ErrorKind::kNumeric:
    case ErrorKind::kInitialization:
    case ErrorKind::kDegenerateClass:
    case ErrorKind::kLearning:
    case ErrorKind::kSampler:
    case ErrorKind::kEmptySet: return 4;
  }
  return 1;
}

// Random well-conditioned theta for oracle checks.
Theta random_theta(CounterRng& rng) {
  auto rate = [&]() { return std::exp(std::log(0.3) + rng.uniform() * std::log(10.0)); };
  Theta t;
  t.p[1] = 0.2 + 0.6 * rng.uniform();
  t.p[0] = 1.0 - t.p[1];
  for (int r = 0; r < 2; ++r) {
    t.lamV[r] = rate();
    t.lamC[r] = rate();
    t.lamS[r] = rate();
    t.lamSp[r] = rate();
    t.lamN[r] = rate();
    t.lamNp[r] = rate();
    t.lamL[r] = rate();
    t.lamLp[r] = rate();
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Utility-based link recommendation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LINKREC_VERSION));
  Params p;

  // synth
  SynthConfig sc;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic temporal network with profiles");
  add_model_flags(synth, p);
  synth->add_option("--users-total", sc.total_users, "Users over all months")->capture_default_str();
  synth->add_option("--months", sc.months, "Number of months")->capture_default_str();
  synth->add_option("--links-per-user", sc.links_per_user, "Links made by each newcomer")->capture_default_str();
  synth->add_option("--closure-rate", sc.closure_rate, "Monthly closure links / current links")->capture_default_str();
  synth->add_option("--attachment", sc.attachment_exponent, "Preferential attachment exponent")->capture_default_str();
  synth->add_option("--homophily", sc.homophily, "Shared-term boost on link choice")->capture_default_str();
  synth->add_option("--vocabulary", sc.vocabulary, "Number of distinct terms")->capture_default_str();
  synth->add_option("--communities", sc.communities, "Term communities")->capture_default_str();
  synth->add_option("--closure-exponent", sc.closure_exponent, "Power of common neighbors in closure weights")
      ->capture_default_str();
  synth->add_option("--terms-per-user", sc.terms_per_user, "Profile size")->capture_default_str();
  synth->add_option("--community-affinity", sc.community_affinity, "Share of terms from the own community")
      ->capture_default_str();
  synth->add_option("--term-skew", sc.term_skew, "Zipf exponent of the other terms (0 = uniform)")
      ->capture_default_str();

  // features
  GraphInputs gi;
  int month = 0;
  std::string kind = "training";
  std::string out_file;
  auto* feats = app.add_subcommand("features", "Compute candidate features for one month");
  add_model_flags(feats, p);
  add_graph_inputs(feats, gi);
  feats->add_option("--month", month, "Training: outcome month t (features from t-1). Candidates: month t")->required();
  feats->add_option("--kind", kind, "training or candidates")->check(CLI::IsMember({"training", "candidates"}))->capture_default_str();
  feats->add_option("--out", out_file, "Output file name inside --out-dir");

  // train
  std::string records_path;
  auto* train = app.add_subcommand("train", "Fit the latent-factor model to training records");
  add_model_flags(train, p);
  train->add_option("--records", records_path, "Training records CSV")->required()->check(CLI::ExistingFile);
  train->add_option("--out", out_file, "Theta file name inside --out-dir");

  // recommend
  std::string cand_path, theta_path;
  std::size_t k_abs = 0;
  auto* rec = app.add_subcommand("recommend", "Rank candidates by recommendation probability");
  add_model_flags(rec, p);
  rec->add_option("--candidates", cand_path, "Candidate records CSV")->required()->check(CLI::ExistingFile);
  rec->add_option("--theta", theta_path, "Theta file")->required()->check(CLI::ExistingFile);
  rec->add_option("--k", k_abs, "Absolute K (overrides --k-frac)");
  rec->add_option("--out", out_file, "Output file name inside --out-dir");

  // evaluate
  std::string months_s, methods_s = "ours,NB,CN,AA,Katz,Jaccard";
  bool quiet = false;
  auto* eval = app.add_subcommand("evaluate", "Run the monthly train/recommend/score experiment");
  add_model_flags(eval, p);
  add_graph_inputs(eval, gi);
  eval->add_option("--months", months_s, "Current months t as a-b (prediction month is t+1); default all");
  eval->add_option("--methods", methods_s, "Comma list of methods")->capture_default_str();
  eval->add_flag("--quiet", quiet, "No progress output");

  // oracle-check
  int cases = 1000;
  auto* oc = app.add_subcommand("oracle-check", "Compare closed forms against quadrature oracles");
  add_model_flags(oc, p);
  oc->add_option("--cases", cases, "Random cases")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*synth) {
      sc.seed = p.seed;
      const auto [graph, profiles] = gen_network(sc);
      auto m = manifest("synth", p);
      m["synth"] = {{"users_total", sc.total_users}, {"months", sc.months},         {"links_per_user", sc.links_per_user},
                    {"closure_rate", sc.closure_rate}, {"attachment", sc.attachment_exponent},
                    {"homophily", sc.homophily},     {"vocabulary", sc.vocabulary}, {"communities", sc.communities},
                    {"terms_per_user", sc.terms_per_user}};
      io::atomic_write(out_path(p, "edges.csv"), io::format_edges(graph));
      io::atomic_write(out_path(p, "users.csv"), io::format_users(graph));
      io::atomic_write(out_path(p, "profiles.csv"), io::format_profiles(profiles));
      m["outputs"] = {"edges.csv", "users.csv", "profiles.csv"};
      write_manifest(m, out_path(p, "synth.manifest.json"));
      std::cout << "wrote " << graph.num_users() << " users, " << graph.num_edges() << " links to " << p.out_dir << "\n";
    } else if (*feats) {
      const TemporalGraph graph = io::load_graph(gi.edges, gi.users);
      const ProfileStore profiles = io::load_profiles(gi.profiles);
      const double rho = single(p.rho, "rho");
      validate(CostConfig{rho});
      std::vector<FeatureRecord> records;
      if (kind == "training") {
        records = build_training(graph, profiles, month, value_cfg(p), CostConfig{rho}, katz_cfg(p),
                                  LabelingConfig{single(p.k_frac, "k-frac")}, threads_of(p));
      } else {
        const EdgeValueCache costs(graph, value_cfg(p), threads_of(p));
        records = to_records(graph, compute_month_features(graph, profiles, month, value_cfg(p), katz_cfg(p), costs,
                                                           threads_of(p)),
                             rho);
      }
      const std::string name = out_file.empty() ? kind + "_" + std::to_string(month) + ".csv" : out_file;
      io::atomic_write(out_path(p, name), io::format_records(records));
      auto m = manifest("features", p);
      note_inputs(m, gi);
      m["inputs"]["month"] = month;
      m["inputs"]["kind"] = kind;
      m["outputs"] = {name};
      write_manifest(m, out_path(p, name + ".manifest.json"));
      std::cout << "wrote " << records.size() << " records to " << name << "\n";
    } else if (*train) {
      const auto records = io::load_records(records_path);
      const FitResult fr = fit(records, em_cfg(p));
      const std::string name = out_file.empty() ? "theta.tsv" : out_file;
      io::atomic_write(out_path(p, name), io::format_theta(fr.theta));
      auto m = manifest("train", p);
      m["inputs"]["records"] = records_path;
      m["outputs"] = {name};
      ordered_json runs = ordered_json::array();
      for (const auto& r : fr.runs)
        runs.push_back({{"iterations", r.iterations},
                        {"converged", r.converged},
                        {"final_loglik", r.trace.empty() ? 0.0 : r.trace.back()},
                        {"error", r.error}});
      m["fit"] = {{"best_restart", fr.best_restart}, {"loglik", fr.loglik}, {"runs", runs}};
      write_manifest(m, out_path(p, name + ".manifest.json"));
      std::cout << "loglik " << io::format_double(fr.loglik) << " (restart " << fr.best_restart << ")\n";
    } else if (*rec) {
      const auto cands = io::load_records(cand_path);
      const Theta theta = io::load_theta(theta_path);
      const std::size_t K = k_abs > 0 ? k_abs : k_from_fraction(single(p.k_frac, "k-frac"), cands.size());
      const auto list = recommend_topk(cands, theta, std::max<std::size_t>(K, 1), threads_of(p));
      const std::string name = out_file.empty() ? "recommendations.csv" : out_file;
      io::atomic_write(out_path(p, name), io::format_recommendations(list));
      auto m = manifest("recommend", p);
      m["inputs"]["candidates"] = cand_path;
      m["inputs"]["theta"] = theta_path;
      m["inputs"]["K"] = K;
      m["outputs"] = {name};
      write_manifest(m, out_path(p, name + ".manifest.json"));
      std::cout << "wrote top " << list.items.size() << " to " << name << "\n";
    } else if (*eval) {
      const TemporalGraph graph = io::load_graph(gi.edges, gi.users);
      const ProfileStore profiles = io::load_profiles(gi.profiles);
      ExperimentConfig cfg;
      cfg.value = value_cfg(p);
      cfg.katz = katz_cfg(p);
      cfg.em = em_cfg(p);
      cfg.rhos = parse_list(p.rho, "rho");
      cfg.k_fractions = parse_list(p.k_frac, "k-frac");
      std::tie(cfg.first_month, cfg.last_month) = parse_months(months_s);
      cfg.methods.clear();
      std::stringstream ss(methods_s);
      for (std::string item; std::getline(ss, item, ',');) cfg.methods.push_back(parse_method(item));
      cfg.threads = threads_of(p);
      const auto cells = run_experiment(graph, profiles, cfg, [&](const std::string& s) {
        if (!quiet) std::cerr << "[evaluate] " << s << "\n";
      });
      auto m = manifest("evaluate", p);
      note_inputs(m, gi);
      m["inputs"]["months"] = months_s.empty() ? "all" : months_s;
      m["inputs"]["methods"] = methods_s;
      for (const auto& cell : cells) {
        const std::string name = "metrics_rho" + fmt_tag(cell.rho) + "_k" + fmt_tag(cell.k_fraction) + ".csv";
        io::atomic_write(out_path(p, name), io::format_metrics(cell.rows));
        m["outputs"].push_back(name);
      }
      if (cells.size() == 1) {
        io::atomic_write(out_path(p, "metrics.csv"), io::format_metrics(cells[0].rows));
        m["outputs"].push_back("metrics.csv");
      }
      write_manifest(m, out_path(p, "evaluate.manifest.json"));
      for (const auto& cell : cells) {
        std::cout << "rho=" << fmt_tag(cell.rho) << " k=" << fmt_tag(cell.k_fraction) << "\n";
        for (const auto& r : cell.rows)
          if (r.month == "mean")
            std::cout << "  " << r.method << " precision " << r.precision << " avg_utility " << r.avg_utility << "\n";
      }
    } else if (*oc) {
      CounterRng rng(p.seed, 7);
      double max_norm = 0.0, max_gamma = 0.0, max_h = 0.0, max_prob = 0.0;
      for (int i = 0; i < cases; ++i) {
        const Theta th = random_theta(rng);
        FeatureRecord r;
        r.V = rng.exponential(1.0);
        r.C = rng.exponential(1.0);
        r.S = rng.exponential(1.0) + 1e-3;
        r.N = rng.exponential(1.0) + 1e-3;
        r.R = rng.bernoulli(0.5) ? 1 : 0;
        max_norm = std::max(max_norm, std::fabs(oracle::posterior_integral(r, th) - 1.0));
        const auto pc = latent::pieces(r.S, r.N, th, r.R);
        const auto pq = oracle::piece_quadrature(r.S, r.N, th, r.R);
        for (int k = 0; k < 4; ++k) {
          if (pq.mass[k] <= 0.0) continue;
          max_gamma = std::max(max_gamma, std::fabs(pc.mean[k] - pq.mean[k]) / std::fabs(pq.mean[k]));
          max_h = std::max(max_h, std::fabs(std::exp(pc.log_h[k]) - pq.mass[k]) / pq.mass[k]);
        }
        const double i1 = oracle::int_quadrature(r, th, 1), i0 = oracle::int_quadrature(r, th, 0);
        max_prob = std::max(max_prob, std::fabs(rec_probability(r, th) - i1 / (i0 + i1)));
      }
      const bool ok = max_norm <= 1e-6 && max_gamma <= 1e-8 && max_h <= 1e-8 && max_prob <= 1e-8;
      std::cout << "cases " << cases << "\n"
                << "max posterior normalization error " << max_norm << "\n"
                << "max Gamma relative error " << max_gamma << "\n"
                << "max H relative error " << max_h << "\n"
                << "max probability abs error " << max_prob << "\n"
                << (ok ? "PASS" : "FAIL") << "\n";
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
