// qwc: exact equivariant I/J-functions and wall-crossing certificates for
// toric GIT targets. All numbers are serialized as exact strings; output is
// byte-identical for identical configuration and seed, whatever the thread
// count.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include <qwc/wallcross.hpp>

using nlohmann::ordered_json;
using namespace qwc;

namespace {

constexpr const char* kEngineVersion = "qwc-1";

struct RunConfig {
  std::string command;
  std::string identity;
  std::string preset;
  std::string file;
  std::string out;
  std::string format = "pretty";
  std::string epsilon = "0+";
  long degree = 2;
  int z_order = 6;
  int threads = 0;  // 0: use available parallelism
  unsigned seed = 0;
  int kmax = 6;
  long dmax = 5;
  bool timings = false;
};

GitPresentation load_presentation(const RunConfig& cfg) {
  if (!cfg.preset.empty() && !cfg.file.empty())
    throw std::invalid_argument("--preset and --file are mutually exclusive");
  if (!cfg.preset.empty()) return GitPresentation::preset(cfg.preset);
  if (!cfg.file.empty()) return GitPresentation::from_json_file(cfg.file);
  throw std::invalid_argument("need --preset or --file");
}

int effective_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  unsigned n = std::thread::hardware_concurrency();
  return n ? static_cast<int>(n) : 1;
}

/* Everything that determines the output, except the thread count. */
std::string cache_key_material(const RunConfig& cfg, const GitPresentation* P) {
  std::ostringstream os;
  os << kEngineVersion << '|' << cfg.command << '|' << cfg.identity << '|'
     << cfg.degree << '|' << cfg.z_order << '|' << cfg.epsilon << '|'
     << cfg.seed << '|' << cfg.kmax << '|' << cfg.dmax << '|' << cfg.format
     << '|';
  if (P) {
    os << P->name << ';' << P->r << ';';
    for (const auto& row : P->weights) {
      for (long w : row) os << w << ',';
      os << '/';
    }
    os << ';';
    for (long t : P->theta) os << t << ',';
    os << ';';
    for (const auto& g : P->effective_generators) {
      for (long v : g) os << v << ',';
      os << '/';
    }
    os << ';';
    for (const auto& c : P->lambda_shift) os << rat_str(c) << ',';
  }
  return os.str();
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

/* Content-addressed result cache, enabled by QWC_CACHE_DIR. Timed runs are
   never cached: stored timings would be stale. The stored artifact carries
   its exit code on the first line. */
struct Cache {
  bool enabled = false;
  std::filesystem::path path;

  static Cache open(const RunConfig& cfg, const GitPresentation* P) {
    Cache c;
    const char* dir = std::getenv("QWC_CACHE_DIR");
    if (!dir || !*dir || cfg.timings) return c;
    c.enabled = true;
    std::filesystem::create_directories(dir);
    c.path = std::filesystem::path(dir) /
             (fnv1a_hex(cache_key_material(cfg, P)) + ".qwc");
    return c;
  }

  bool load(int& exit_code, std::string& payload) const {
    if (!enabled) return false;
    std::ifstream in(path);
    if (!in) return false;
    std::string first;
    if (!std::getline(in, first)) return false;
    try {
      exit_code = std::stoi(first);
    } catch (...) {
      return false;
    }
    std::ostringstream rest;
    rest << in.rdbuf();
    payload = rest.str();
    return true;
  }

  void store(int exit_code, const std::string& payload) const {
    if (!enabled) return;
    std::ofstream out(path, std::ios::trunc);
    out << exit_code << '\n' << payload;
  }
};

void emit(const RunConfig& cfg, const std::string& payload) {
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::trunc);
    if (!f) throw std::invalid_argument("cannot write output file '" + cfg.out + "'");
    f << payload;
  } else {
    std::cout << payload;
  }
}

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += "\"\"";
    q += c;
  }
  return q + "\"";
}

std::string beta_str(const std::vector<long>& b) {
  std::string s = "(";
  for (size_t i = 0; i < b.size(); ++i) s += (i ? " " : "") + std::to_string(b[i]);
  return s + ")";
}

/* ---------- analyze ---------- */

ordered_json analyze_json(const GitPresentation& P) {
  auto fps = fixed_points(P);
  auto orbs = closed_orbits(P, fps);
  auto gens = effective_generators(P, orbs);
  auto names = P.var_names();
  bool semi_positive = true, fano = true;
  ordered_json jg = ordered_json::array();
  for (const auto& g : gens) {
    long c1 = 0;
    for (long d : g.dray) c1 += d;
    if (c1 < 0) semi_positive = false;
    if (c1 <= 0) fano = false;
    jg.push_back({{"b", g.b}, {"theta_degree", g.d}, {"anticanonical_degree", c1}});
  }
  ordered_json j;
  j["command"] = "analyze";
  j["preset"] = P.name;
  j["torus_rank"] = P.r;
  j["rays"] = P.rays();
  j["dimension"] = P.dim();
  j["weights"] = P.weights;
  j["theta"] = P.theta;
  if (!P.labels.empty()) j["labels"] = P.labels;
  ordered_json jf = ordered_json::array();
  for (const auto& fp : fps.pts) {
    ordered_json e;
    e["sigma"] = fp.sigma;
    ordered_json tw = ordered_json::array();
    for (int rho : fp.sigma) tw.push_back(fp.w[rho].str(names));
    e["tangent_weights"] = tw;
    jf.push_back(e);
  }
  j["fixed_points"] = jf;
  j["effective_generators"] = jg;
  j["semi_positive"] = semi_positive;
  j["fano"] = fano;
  j["chi_top"] = fps.pts.size();
  return j;
}

std::string analyze_pretty(const ordered_json& j) {
  std::ostringstream os;
  os << "presentation " << j["preset"].get<std::string>() << ": rank "
     << j["torus_rank"] << ", " << j["rays"] << " rays, dimension "
     << j["dimension"] << "\n";
  os << "fixed points:\n";
  for (const auto& fp : j["fixed_points"]) {
    os << "  sigma={";
    bool first = true;
    for (const auto& r : fp["sigma"]) {
      os << (first ? "" : ",") << r;
      first = false;
    }
    os << "} tangent weights:";
    for (const auto& w : fp["tangent_weights"]) os << " " << w.get<std::string>();
    os << "\n";
  }
  os << "effective generators:\n";
  for (const auto& g : j["effective_generators"]) {
    os << "  b=" << g["b"].dump() << " theta_degree=" << g["theta_degree"]
       << " anticanonical_degree=" << g["anticanonical_degree"] << "\n";
  }
  os << "semi_positive=" << (j["semi_positive"].get<bool>() ? "true" : "false")
     << " fano=" << (j["fano"].get<bool>() ? "true" : "false")
     << " chi_top=" << j["chi_top"] << "\n";
  return os.str();
}

/* ---------- coefficient tables (ifun / jfun) ---------- */

ordered_json terms_json(const SerializedTerms& ts) {
  ordered_json a = ordered_json::array();
  for (const auto& [e, c] : ts) a.push_back(ordered_json::array({e, c}));
  return a;
}

ordered_json ratfunc_json(const EqRatFunc& f) {
  SerializedRatFunc sf = serialize_terms(f);
  ordered_json j;
  j["numerator"] = terms_json(sf.numerator);
  j["denominator"] = terms_json(sf.denominator);
  return j;
}

ordered_json table_json(const std::string& cmd, const GitPresentation& P,
                        const std::shared_ptr<const NovCtx>& ctx,
                        const std::vector<NovikovSeries>& series,
                        const RunConfig& cfg) {
  auto names = P.var_names();
  ordered_json j;
  j["command"] = cmd;
  j["preset"] = P.name;
  j["degree"] = cfg.degree;
  j["z_order"] = cfg.z_order;
  j["variables"] = names;
  ordered_json rows = ordered_json::array();
  for (size_t s = 0; s < series.size(); ++s) {
    for (size_t m = 0; m < ctx->classes.size(); ++m) {
      EqRatFunc c = series[s].coeff(static_cast<int>(m));
      ordered_json row;
      row["sigma"] = s;
      row["beta"] = ctx->classes[m].b;
      row["coeff"] = c.str(names);
      row["terms"] = ratfunc_json(c);
      ordered_json lz = ordered_json::object();
      if (!c.is_zero()) {
        ZSeries zc = laurent_expand(c, P.zvar(), cfg.z_order);
        for (const auto& [k, coef] : zc.coeffs())
          if (!coef.is_zero()) lz["z^" + std::to_string(-k)] = coef.str(names);
      }
      row["laurent"] = lz;
      rows.push_back(std::move(row));
    }
  }
  j["table"] = rows;
  return j;
}

std::string table_csv(const ordered_json& j) {
  std::ostringstream os;
  os << "sigma,beta,coeff\n";
  for (const auto& row : j["table"]) {
    std::vector<long> b = row["beta"].get<std::vector<long>>();
    os << row["sigma"] << "," << csv_quote(beta_str(b)) << ","
       << csv_quote(row["coeff"].get<std::string>()) << "\n";
  }
  return os.str();
}

std::string table_pretty(const ordered_json& j) {
  std::ostringstream os;
  os << j["command"].get<std::string>() << " preset="
     << j["preset"].get<std::string>() << " degree=" << j["degree"] << "\n";
  for (const auto& row : j["table"]) {
    std::vector<long> b = row["beta"].get<std::vector<long>>();
    os << "  sigma=" << row["sigma"] << " beta=" << beta_str(b) << ": "
       << row["coeff"].get<std::string>() << "\n";
  }
  return os.str();
}

/* ---------- verify ---------- */

const std::vector<std::string> kIdentities = {
    "i-equals-j", "truncation", "v-s",    "point-wallcross",
    "string",     "dilaton",    "trr",    "i0-lemma"};

VerificationReport run_identity(const std::string& id, const RunConfig& cfg,
                                const GitPresentation* target) {
  int threads = effective_threads(cfg);
  if (id == "point-wallcross") return point_wallcross_sweep(cfg.kmax, cfg.dmax);
  if (!target) throw std::invalid_argument("need --preset or --file");
  const GitPresentation& P = *target;
  if (id == "i-equals-j") return verify_i_equals_j(P, cfg.degree, threads);
  if (id == "truncation")
    return verify_truncation_consistency(P, Epsilon::parse(cfg.epsilon),
                                         cfg.degree, threads);
  if (id == "v-s") return verify_v_s(P, cfg.degree, threads);
  if (id == "string") return verify_string(P, cfg.degree, threads, cfg.seed);
  if (id == "dilaton") return verify_dilaton(P, cfg.degree, threads, cfg.seed);
  if (id == "trr") return verify_trr(P, cfg.degree, threads, cfg.seed);
  if (id == "i0-lemma") return verify_i0_lemma(P, cfg.degree);
  throw std::invalid_argument(
      "unknown identity '" + id +
      "' (known: i-equals-j, truncation, v-s, point-wallcross, string, "
      "dilaton, trr, i0-lemma)");
}

std::string report_csv(const VerificationReport& rep) {
  std::ostringstream os;
  os << "identity,sigma,beta,status,witness\n";
  for (const auto& c : rep.cells)
    os << rep.identity << "," << csv_quote(c.sigma) << ","
       << csv_quote(beta_str(c.beta)) << "," << c.status << ","
       << csv_quote(c.witness) << "\n";
  return os.str();
}

std::string report_pretty(const VerificationReport& rep, bool timings) {
  std::ostringstream os;
  os << "verify " << rep.identity << " preset=" << rep.presentation
     << " degree=" << rep.degree_bound << ": " << rep.count("pass") << " pass, "
     << rep.count("fail") << " fail, " << rep.count("unsupported")
     << " unsupported";
  if (timings) os << " (" << rep.runtime_ms << " ms)";
  os << "\n";
  for (const auto& c : rep.cells)
    if (c.status != "pass")
      os << "  " << c.status << " sigma=" << c.sigma << " beta="
         << beta_str(c.beta) << (c.witness.empty() ? "" : ": " + c.witness)
         << "\n";
  return os.str();
}

int cmd_verify(const RunConfig& cfg, const GitPresentation* target,
               std::string& payload) {
  std::vector<std::string> ids;
  if (cfg.identity.empty()) {
    ids = kIdentities;
  } else {
    ids.push_back(cfg.identity);
  }
  std::vector<VerificationReport> reports;
  for (const auto& id : ids) reports.push_back(run_identity(id, cfg, target));

  bool fail = false, unsup = false;
  for (const auto& r : reports) {
    fail = fail || r.any_fail();
    unsup = unsup || r.any_unsupported();
  }
  std::ostringstream os;
  if (cfg.format == "json") {
    if (reports.size() == 1) {
      os << reports[0].to_json(cfg.timings).dump(2) << "\n";
    } else {
      ordered_json arr = ordered_json::array();
      for (const auto& r : reports) arr.push_back(r.to_json(cfg.timings));
      ordered_json j;
      j["reports"] = arr;
      os << j.dump(2) << "\n";
    }
  } else if (cfg.format == "csv") {
    for (const auto& r : reports) os << report_csv(r);
  } else {
    for (const auto& r : reports) os << report_pretty(r, cfg.timings);
  }
  payload = os.str();
  return fail ? 1 : (unsup ? 3 : 0);
}

int run(const RunConfig& cfg, const GitPresentation* target,
        std::string& payload) {
  if (cfg.degree < 0) throw std::invalid_argument("--degree must be >= 0");
  if (cfg.z_order < 2) throw std::invalid_argument("--z-order must be >= 2");
  Epsilon::parse(cfg.epsilon);  // reject malformed epsilon up front

  if (cfg.command == "verify") return cmd_verify(cfg, target, payload);
  if (!target) throw std::invalid_argument("need --preset or --file");
  const GitPresentation& P = *target;

  if (cfg.command == "analyze") {
    if (cfg.format == "csv")
      throw std::invalid_argument("analyze supports json and pretty formats");
    ordered_json j = analyze_json(P);
    payload = cfg.format == "json" ? j.dump(2) + "\n" : analyze_pretty(j);
    return 0;
  }
  if (cfg.command == "ifun") {
    SmallIFunction I = small_i(P, cfg.degree);
    ordered_json j = table_json("ifun", P, I.ctx, I.at, cfg);
    payload = cfg.format == "json"  ? j.dump(2) + "\n"
              : cfg.format == "csv" ? table_csv(j)
                                    : table_pretty(j);
    return 0;
  }
  if (cfg.command == "jfun") {
    Geometry G = make_geometry(P, cfg.degree);
    auto J = small_j(G, effective_threads(cfg));
    ordered_json j = table_json("jfun", P, G.ctx, J, cfg);
    payload = cfg.format == "json"  ? j.dump(2) + "\n"
              : cfg.format == "csv" ? table_csv(j)
                                    : table_pretty(j);
    return 0;
  }
  throw std::invalid_argument("unknown command");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{
      "qwc: exact equivariant I/J-functions and wall-crossing certificates "
      "for toric GIT targets"};
  app.set_version_flag("--version",
                       std::string("qwc 1.0.0 (engine ") + kEngineVersion +
                           ", presets v1)");
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool needs_target) {
    if (needs_target) {
      sub->add_option("--preset", cfg.preset,
                      "bundled presentation: p1, p2, f2, local-p2, point, "
                      "point-r2");
      sub->add_option("--file", cfg.file, "presentation JSON file");
    }
    sub->add_option("--out", cfg.out, "write output to this file");
    sub->add_option("--format", cfg.format, "json|csv|pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
  };

  CLI::App* an = app.add_subcommand("analyze", "classify a presentation");
  add_common(an, true);

  CLI::App* ifn = app.add_subcommand("ifun", "small I-function table");
  add_common(ifn, true);
  ifn->add_option("--degree", cfg.degree, "theta-degree bound");
  ifn->add_option("--z-order", cfg.z_order, "Laurent expansion order in 1/z");

  CLI::App* jfn = app.add_subcommand("jfun", "small J-function table");
  add_common(jfn, true);
  jfn->add_option("--degree", cfg.degree, "theta-degree bound");
  jfn->add_option("--z-order", cfg.z_order, "Laurent expansion order in 1/z");
  jfn->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");

  CLI::App* vf = app.add_subcommand(
      "verify", "check wall-crossing identities cell by cell");
  add_common(vf, true);
  vf->add_option("identity", cfg.identity,
                 "i-equals-j | truncation | v-s | point-wallcross | string | "
                 "dilaton | trr | i0-lemma (default: all)");
  vf->add_option("--degree", cfg.degree, "theta-degree bound");
  vf->add_option("--epsilon", cfg.epsilon,
                 "stability parameter: 0+, a positive rational, or inf");
  vf->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  vf->add_option("--seed", cfg.seed,
                 "property-test seed; 0 takes the canonical insertions");
  vf->add_option("--kmax", cfg.kmax, "point-wallcross: max markings");
  vf->add_option("--dmax", cfg.dmax, "point-wallcross: max degree");
  vf->add_flag("--timings", cfg.timings,
               "include wall-clock runtimes in reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const GitPresentation* target = nullptr;
    GitPresentation loaded;
    bool needs_target =
        cfg.command != "verify" || cfg.identity != "point-wallcross";
    if (needs_target && (!cfg.preset.empty() || !cfg.file.empty())) {
      loaded = load_presentation(cfg);
      target = &loaded;
    }
    Cache cache = Cache::open(cfg, target);
    int code = 0;
    std::string payload;
    if (cache.load(code, payload)) {
      emit(cfg, payload);
      return code;
    }
    code = run(cfg, target, payload);
    cache.store(code, payload);
    emit(cfg, payload);
    return code;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
