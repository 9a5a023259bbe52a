#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "custody/analysis.hpp"
#include "custody/attack.hpp"
#include "custody/constructions.hpp"
#include "custody/design_io.hpp"
#include "custody/report.hpp"
#include "custody/rng.hpp"
#include "custody/sampling.hpp"
#include "json.hpp"

namespace {

using namespace custody;

constexpr int kExitReliable = 0;
constexpr int kExitError = 1;
constexpr int kExitUnreliable = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<std::uint32_t, std::uint32_t> parse_pair(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError(std::string(what) + " expects two integers 'a,b'");
  try {
    std::size_t used = 0;
    const auto a = std::stoul(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("");
    const std::string rest = text.substr(comma + 1);
    const auto b = std::stoul(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
    return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  } catch (const std::logic_error&) {
    throw UsageError(std::string(what) + " expects two integers 'a,b', got '" + text + "'");
  }
}

Rational parse_mu(const std::string& text) {
  if (text.find_first_not_of("0123456789/") != std::string::npos) {
    throw UsageError("--mu must be an exact fraction such as 1/2 or 2/3");
  }
  return parse_rational(text);
}

// Which assignment a command works on.
struct Source {
  std::string symmetric;
  std::string design;
  std::string polynomial;
  bool witt24 = false;
  std::uint32_t projective = 0;

  void add_options(CLI::App* cmd) {
    auto* group = cmd->add_option_group("source");
    group->add_option("--symmetric", symmetric, "all k-subsets of n nodes, as n,k");
    group->add_option("--design", design, "design file");
    group->add_option("--polynomial", polynomial, "polynomial design, as k,d");
    group->add_flag("--witt24", witt24, "5-(24,8,1) Witt design");
    group->add_option("--projective", projective, "projective plane of prime order q");
    group->require_option(1);
  }

  std::string descriptor() const {
    if (!symmetric.empty()) return "symmetric:" + symmetric;
    if (!design.empty()) return "design:" + design;
    if (!polynomial.empty()) return "polynomial:" + polynomial;
    if (witt24) return "witt24";
    return "projective:" + std::to_string(projective);
  }

  std::optional<DesignSpec> spec() const {
    if (witt24) return build_witt_24().spec;
    if (projective) return build_projective_plane(projective).spec;
    return std::nullopt;
  }

  std::optional<PolynomialParams> poly() const {
    if (polynomial.empty()) return std::nullopt;
    auto [k, d] = parse_pair(polynomial, "--polynomial");
    PolynomialParams p{k, d};
    p.validate();
    return p;
  }

  std::uint32_t node_count() const {
    if (!symmetric.empty()) return parse_pair(symmetric, "--symmetric").first;
    if (auto p = poly()) return p->node_count();
    if (auto s = spec()) return s->n;
    return load().node_count();
  }

  std::uint32_t group_size() const {
    if (!symmetric.empty()) return parse_pair(symmetric, "--symmetric").second;
    if (auto p = poly()) return p->k;
    if (auto s = spec()) return s->k;
    return load().group_size();
  }

  // Explicit group list (implicit families are materialized under the cap).
  GroupAssignment load() const {
    if (!symmetric.empty()) {
      auto [n, k] = parse_pair(symmetric, "--symmetric");
      return build_symmetric(n, k);
    }
    if (!design.empty()) return read_design_file(design);
    if (auto p = poly()) return build_polynomial(*p);
    if (witt24) return build_witt_24().assignment;
    return build_projective_plane(projective).assignment;
  }
};

struct Adversary {
  std::string gamma;
  std::optional<std::uint64_t> s;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--gamma", gamma, "corrupted fraction (s = floor(gamma n))");
    cmd->add_option("--s", s, "number of corrupted nodes");
  }

  std::uint64_t resolve(std::uint64_t n) const {
    if (gamma.empty() && !s) throw UsageError("give --gamma or --s");
    if (gamma.empty()) {
      if (*s > n) throw UsageError("--s exceeds the node count");
      return *s;
    }
    const Rational g = parse_rational(gamma);
    if (g < 0 || g > 1) throw UsageError("--gamma must lie in [0, 1]");
    const auto power = AdversaryPower::from_fraction(n, g);
    if (s && (*s != power.s || power.gamma != g)) {
      throw UsageError("--gamma and --s disagree: gamma n = " + to_fraction_string(g * BigNat(static_cast<unsigned long>(n))));
    }
    return power.s;
  }
};

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

// ---- construct --------------------------------------------------------------

struct ConstructArgs {
  std::string type;
  std::uint32_t n = 0, k = 0, d = 0, q = 0;
  bool materialize = false;
  std::string out;
};

int run_construct(const ConstructArgs& args) {
  GroupAssignment a = GroupAssignment::symmetric_all(1, 1);
  std::vector<std::string> header;
  if (args.type == "symmetric") {
    if (!args.n || !args.k) throw UsageError("symmetric needs --n and --k");
    if (!args.materialize) throw UsageError("the symmetric family is implicit; pass --materialize to list its groups");
    a = materialize(build_symmetric(args.n, args.k));
    header.push_back("symmetric n=" + std::to_string(args.n) + " k=" + std::to_string(args.k));
  } else if (args.type == "polynomial") {
    if (!args.k || !args.d) throw UsageError("polynomial needs --k and --d");
    a = build_polynomial({args.k, args.d});
    header.push_back("polynomial k=" + std::to_string(args.k) + " d=" + std::to_string(args.d));
  } else if (args.type == "projective") {
    if (!args.q) throw UsageError("projective needs --q");
    auto built = build_projective_plane(args.q);
    a = std::move(built.assignment);
    header.push_back("projective q=" + std::to_string(args.q) + " design 2-(" + std::to_string(built.spec.n) + "," +
                     std::to_string(built.spec.k) + ",1)");
  } else if (args.type == "witt24") {
    a = build_witt_24().assignment;
    header.push_back("witt24 design 5-(24,8,1)");
  } else {
    throw UsageError("unknown --type '" + args.type + "'");
  }
  write_design_file(args.out, a, header);
  std::cout << "n=" << a.node_count() << " m=" << a.size() << " k=" << a.group_size() << '\n';
  return 0;
}

// ---- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  Source source;
  Adversary adversary;
  std::string mu;
  std::string method;
  std::uint32_t strength = 0;
  std::uint64_t lambda = 1;
  std::uint64_t cap = kDefaultBruteForceCap;
};

std::string default_method(const Source& src) {
  if (!src.symmetric.empty()) return "exact-symmetric";
  if (!src.polynomial.empty()) return "poly-bound";
  if (!src.design.empty()) return "bruteforce";
  return "block-bound";
}

int run_analyze(const AnalyzeArgs& args, kernels::Parallelism par) {
  const Rational mu = parse_mu(args.mu);
  const Source& src = args.source;
  const std::string method = args.method.empty() ? default_method(src) : args.method;
  const std::uint32_t n = src.node_count();
  const std::uint32_t k = src.group_size();
  const ThresholdPolicy policy = make_policy(k, mu);
  const std::uint64_t s = args.adversary.resolve(n);

  SecurityReport rep;
  if (method == "exact-symmetric") {
    if (src.symmetric.empty()) throw UsageError("exact-symmetric requires --symmetric");
    rep = analyze_symmetric(n, k, policy, s);
  } else if (method == "bruteforce") {
    rep = analyze_bruteforce(materialize(src.load()), policy, s, args.cap, par);
  } else if (method == "block-bound") {
    DesignSpec spec;
    if (auto known = src.spec()) {
      spec = *known;
    } else if (!src.design.empty()) {
      if (!args.strength) throw UsageError("block-bound on a design file needs --strength (and --lambda)");
      spec = {args.strength, n, k, args.lambda};
    } else {
      throw UsageError("block-bound requires --design, --witt24 or --projective");
    }
    rep = analyze_block_bound(spec, policy, s);
  } else if (method == "poly-bound") {
    auto params = src.poly();
    if (!params) throw UsageError("poly-bound requires --polynomial");
    rep = analyze_poly_bound(*params, policy, s);
  } else {
    throw UsageError("unknown --method '" + method + "'");
  }
  std::cout << security_record({method, n, k, policy}, rep) << '\n';
  return rep.reliable ? kExitReliable : kExitUnreliable;
}

// ---- curve ------------------------------------------------------------------

struct CurveArgs {
  Source source;
  std::string mu;
  std::string method;
  std::uint32_t gamma_steps = 0;
  std::string k_sweep;
  std::string gamma;
  std::uint32_t strength = 0;
  std::uint64_t lambda = 1;
  std::string out;
};

int run_curve(const CurveArgs& args, kernels::Parallelism par) {
  const Rational mu = parse_mu(args.mu);
  const Source& src = args.source;
  std::vector<CurveRow> rows;

  if (!args.k_sweep.empty()) {
    if (src.symmetric.empty()) throw UsageError("--k-sweep works on --symmetric n,k (k is ignored)");
    if (args.gamma.empty()) throw UsageError("--k-sweep needs --gamma");
    auto [lo, hi] = parse_pair(args.k_sweep, "--k-sweep");
    std::vector<std::uint32_t> ks;
    for (std::uint32_t k = lo; k <= hi; ++k) ks.push_back(k);
    rows = curve_over_k(src.node_count(), mu, parse_rational(args.gamma), ks);
  } else {
    if (!args.gamma_steps) throw UsageError("give --gamma-steps or --k-sweep");
    const std::string method = args.method.empty() ? default_method(src) : args.method;
    CurveMethod cm;
    if (method == "exact-symmetric") cm = CurveMethod::exact;
    else if (method == "bruteforce") cm = CurveMethod::bruteforce;
    else if (method == "block-bound" || method == "poly-bound") cm = CurveMethod::bound;
    else throw UsageError("unknown --method '" + method + "'");

    std::optional<GroupAssignment> loaded;
    AssignmentDescriptor desc;
    if (!src.symmetric.empty()) {
      desc = SymmetricDescriptor{src.node_count(), src.group_size()};
    } else if (auto p = src.poly(); p && cm == CurveMethod::bound) {
      desc = PolynomialDescriptor{*p};
    } else if (auto spec = src.spec(); spec && cm == CurveMethod::bound) {
      desc = BlockDesignDescriptor{*spec};
    } else if (!src.design.empty() && cm == CurveMethod::bound) {
      if (!args.strength) throw UsageError("block-bound on a design file needs --strength (and --lambda)");
      loaded = src.load();
      desc = BlockDesignDescriptor{{args.strength, loaded->node_count(), loaded->group_size(), args.lambda}};
    } else {
      loaded = src.load();
      desc = ExplicitDescriptor{&*loaded};
    }
    rows = curve_over_gamma(desc, mu, gamma_grid(args.gamma_steps), cm, par);
  }

  std::ostringstream csv;
  write_curve_csv(csv, rows);
  if (args.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(args.out, csv.str());
    std::cout << "rows=" << rows.size() << " out=" << args.out << '\n';
  }
  return 0;
}

// ---- sample -----------------------------------------------------------------

struct SampleArgs {
  Source source;
  Adversary adversary;
  std::uint64_t m_prime = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string mu;
  double c = 0.0;
};

int run_sample(const SampleArgs& args, kernels::Parallelism par) {
  const Source& src = args.source;
  if (args.out.empty() && args.mu.empty()) throw UsageError("sample needs --out, --mu, or both");

  if (!args.out.empty()) {
    GroupAssignment sampled = GroupAssignment::symmetric_all(1, 1);
    if (auto p = src.poly()) {
      sampled = sample_polynomial(*p, args.m_prime, args.seed);
    } else if (!src.symmetric.empty()) {
      sampled = sample_assignment(build_symmetric(src.node_count(), src.group_size()), args.m_prime, args.seed);
    } else {
      sampled = sample_assignment(src.load(), args.m_prime, args.seed);
    }
    write_design_file(args.out, sampled, sampled_header(src.descriptor(), args.seed, args.m_prime));
  }

  if (!args.mu.empty()) {
    const Rational mu = parse_mu(args.mu);
    const std::uint32_t n = src.node_count();
    const ThresholdPolicy policy = make_policy(src.group_size(), mu);
    const std::uint64_t s = args.adversary.resolve(n);
    SecurityReport base;
    if (!src.symmetric.empty()) base = analyze_symmetric(n, src.group_size(), policy, s);
    else if (auto p = src.poly()) base = analyze_poly_bound(*p, policy, s);
    else if (auto spec = src.spec()) base = analyze_block_bound(*spec, policy, s);
    else base = analyze_bruteforce(src.load(), policy, s, kDefaultBruteForceCap, par);

    const auto bound = sampled_eta_bound(n, base.m, base.eta, base.gamma, args.m_prime, args.c);
    nlohmann::ordered_json j;
    j["method"] = "sampled-bound";
    j["source"] = src.descriptor();
    j["n"] = n;
    j["m"] = base.m.get_str();
    j["m_prime"] = args.m_prime;
    j["seed"] = args.seed;
    j["rng"] = kRngAlgorithm;
    j["s"] = s;
    j["gamma"] = to_fraction_string(base.gamma);
    j["c"] = args.c;
    j["eta_exact"] = base.eta.exact_string();
    j["eta_decimal"] = base.eta.decimal_string();
    j["eta_kind"] = to_string(base.eta.kind);
    j["applicable"] = bound.applicable;
    if (bound.applicable) {
      j["eta_prime_bound"] = to_decimal_string(exact_from_double(bound.eta_prime_bound), 4);
      j["success_probability"] = to_decimal_string(exact_from_double(bound.success_probability_bound), 6);
    }
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "m_prime=" << args.m_prime << " seed=" << args.seed << " out=" << args.out << '\n';
  }
  return 0;
}

// ---- attack -----------------------------------------------------------------

struct AttackArgs {
  Source source;
  Adversary adversary;
  std::string mu;
  std::string method = "greedy";
  std::string rule = "conditional-expectation";
  std::uint64_t cap = kDefaultBruteForceCap;
};

int run_attack(const AttackArgs& args, kernels::Parallelism par) {
  const Rational mu = parse_mu(args.mu);
  const GroupAssignment a = materialize(args.source.load());
  const ThresholdPolicy policy = make_policy(a.group_size(), mu);
  const std::uint64_t s = args.adversary.resolve(a.node_count());
  AttackResult res;
  if (args.method == "greedy") {
    GreedyRule rule;
    if (args.rule == "conditional-expectation") rule = GreedyRule::conditional_expectation;
    else if (args.rule == "average-threshold") rule = GreedyRule::average_threshold;
    else throw UsageError("unknown --rule '" + args.rule + "'");
    res = greedy_attack(a, policy, s, rule, par);
  } else if (args.method == "optimal") {
    res = optimal_attack(a, policy, s, args.cap, par);
  } else {
    throw UsageError("unknown --method '" + args.method + "'");
  }
  std::cout << attack_record(args.method, s, res) << '\n';
  return 0;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string design;
  std::uint32_t r = 0;
  std::uint64_t lambda = 1;
  std::uint64_t cap = kDefaultVerifyCap;
};

int run_verify(const VerifyArgs& args, kernels::Parallelism par) {
  const GroupAssignment a = read_design_file(args.design);
  const DesignSpec spec{args.r, a.node_count(), a.group_size(), args.lambda};
  const auto result = verify_design(a, spec, args.cap, par);
  const std::string name = std::to_string(spec.strength) + "-(" + std::to_string(spec.n) + "," +
                           std::to_string(spec.k) + "," + std::to_string(spec.lambda) + ")";
  if (result.ok) {
    std::cout << "OK " << name << '\n';
    return 0;
  }
  std::cout << "FAIL " << name << " subset";
  for (NodeId v : *result.witness) std::cout << ' ' << v;
  std::cout << " lies in " << result.witness_count << " blocks\n";
  return kExitUnreliable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-assignment security analysis for threshold custody"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = OpenMP default)");

  ConstructArgs construct;
  auto* c_cmd = app.add_subcommand("construct", "build a design and write it to a file");
  c_cmd->add_option("--type", construct.type, "symmetric | polynomial | projective | witt24")->required();
  c_cmd->add_option("--n", construct.n);
  c_cmd->add_option("--k", construct.k);
  c_cmd->add_option("--d", construct.d);
  c_cmd->add_option("--q", construct.q);
  c_cmd->add_flag("--materialize", construct.materialize, "list every k-subset (symmetric only)");
  c_cmd->add_option("--out", construct.out)->required();

  AnalyzeArgs analyze;
  auto* a_cmd = app.add_subcommand("analyze", "print a security report; exit 0 if reliable, 2 if not");
  analyze.source.add_options(a_cmd);
  analyze.adversary.add_options(a_cmd);
  a_cmd->add_option("--mu", analyze.mu, "authentication threshold as a fraction")->required();
  a_cmd->add_option("--method", analyze.method, "exact-symmetric | bruteforce | block-bound | poly-bound");
  a_cmd->add_option("--strength", analyze.strength, "design strength r for block-bound on a file");
  a_cmd->add_option("--lambda", analyze.lambda, "design index for block-bound on a file");
  a_cmd->add_option("--cap", analyze.cap, "largest C(n,s) brute force may enumerate");

  CurveArgs curve;
  auto* v_cmd = app.add_subcommand("curve", "write an eta curve as CSV");
  curve.source.add_options(v_cmd);
  v_cmd->add_option("--mu", curve.mu)->required();
  v_cmd->add_option("--method", curve.method);
  v_cmd->add_option("--gamma-steps", curve.gamma_steps, "rows at gamma = i/steps");
  v_cmd->add_option("--k-sweep", curve.k_sweep, "group sizes lo,hi at fixed --gamma");
  v_cmd->add_option("--gamma", curve.gamma);
  v_cmd->add_option("--strength", curve.strength);
  v_cmd->add_option("--lambda", curve.lambda);
  v_cmd->add_option("--out", curve.out);

  SampleArgs sample;
  auto* s_cmd = app.add_subcommand("sample", "draw m' groups uniformly; optionally print the sampled eta bound");
  sample.source.add_options(s_cmd);
  sample.adversary.add_options(s_cmd);
  s_cmd->add_option("--m-prime", sample.m_prime)->required();
  s_cmd->add_option("--seed", sample.seed)->required();
  s_cmd->add_option("--out", sample.out);
  s_cmd->add_option("--mu", sample.mu);
  s_cmd->add_option("--c", sample.c, "confidence parameter");

  AttackArgs attack;
  auto* t_cmd = app.add_subcommand("attack", "choose corrupted nodes");
  attack.source.add_options(t_cmd);
  attack.adversary.add_options(t_cmd);
  t_cmd->add_option("--mu", attack.mu)->required();
  t_cmd->add_option("--method", attack.method, "greedy | optimal");
  t_cmd->add_option("--rule", attack.rule, "conditional-expectation | average-threshold");
  t_cmd->add_option("--cap", attack.cap);

  VerifyArgs verify;
  auto* f_cmd = app.add_subcommand("verify", "check that a design file is an r-(n,k,lambda) design");
  f_cmd->add_option("--design", verify.design)->required();
  f_cmd->add_option("--r", verify.r)->required();
  f_cmd->add_option("--lambda", verify.lambda);
  f_cmd->add_option("--cap", verify.cap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  const kernels::Parallelism par{threads};
  try {
    if (*c_cmd) return run_construct(construct);
    if (*a_cmd) return run_analyze(analyze, par);
    if (*v_cmd) return run_curve(curve, par);
    if (*s_cmd) return run_sample(sample, par);
    if (*t_cmd) return run_attack(attack, par);
    if (*f_cmd) return run_verify(verify, par);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
