#include "ecmoments/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecmoments/analysis.hpp"
#include "ecmoments/builtins.hpp"
#include "ecmoments/error.hpp"
#include "ecmoments/family_spec.hpp"
#include "ecmoments/oracles.hpp"

namespace ecm {

namespace {

using json = nlohmann::json;

constexpr const char* kPrimeConvention =
    "primes >= 5 only; 2 and 3 are excluded and --first N counts primes from 5";

struct RunConfig {
  std::string command;
  std::string family;
  std::vector<std::string> param_args;
  std::size_t first = 0;
  std::uint64_t prime_min = 5;
  std::uint64_t prime_max = 0;
  bool has_first = false, has_min = false, has_max = false;
  std::string orders = "";
  std::size_t group_size = 50;
  std::string normalizer = "auto";
  std::uint64_t two_param_cap = 211;
  unsigned workers = 1;
  std::string out, summary_out;
  std::string oracle;
  std::string ks = "1,2,3,4,5,6";
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) usage("bad " + what + " '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) usage(what + " list is empty");
  return out;
}

FamilyParams parse_params(const std::vector<std::string>& args) {
  FamilyParams out;
  for (const auto& kv : args) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) usage("--param expects key=value, got '" + kv + "'");
    std::int64_t v = 0;
    const std::string val = kv.substr(eq + 1);
    const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size()) usage("--param value must be an integer: " + kv);
    out[kv.substr(0, eq)] = v;
  }
  return out;
}

struct ResolvedFamily {
  Family family;
  std::optional<std::string> builtin;
  FamilyParams params;
};

ResolvedFamily resolve_family(const RunConfig& cfg) {
  if (cfg.family.empty()) usage("--family is required");
  const FamilyParams params = parse_params(cfg.param_args);
  constexpr std::string_view prefix = "builtin:";
  if (cfg.family.starts_with(prefix)) {
    const std::string name = cfg.family.substr(prefix.size());
    const BuiltinFamily& entry = find_builtin(name);
    const FamilyParams resolved = resolve_params(entry, params);
    return {entry.make(resolved), name, resolved};
  }
  if (!params.empty()) usage("--param applies to builtin families only");
  return {load_family_spec(cfg.family), std::nullopt, {}};
}

std::vector<Prime> select_primes(const RunConfig& cfg, std::size_t default_first,
                                 std::uint64_t default_max = 0) {
  if (cfg.has_first && cfg.has_max) usage("--first and --prime-max are exclusive");
  if (cfg.has_first) return primes_from(cfg.prime_min, cfg.first);
  if (cfg.has_max) return primes_in_range(cfg.prime_min, cfg.prime_max);
  if (default_max) return primes_in_range(cfg.prime_min, default_max);
  return primes_from(cfg.prime_min, default_first);
}

std::string prime_selection_text(const std::vector<Prime>& primes) {
  if (primes.empty()) return "no primes";
  return std::to_string(primes.size()) + " primes from " + std::to_string(primes.front().value()) +
         " to " + std::to_string(primes.back().value());
}

// Everything that changes results; worker count and output paths excluded
// so output is byte-identical across them.
json config_echo(const RunConfig& cfg, const std::vector<Prime>& primes) {
  json c;
  c["command"] = cfg.command;
  if (!cfg.family.empty()) c["family"] = cfg.family;
  if (!cfg.param_args.empty()) c["params"] = cfg.param_args;
  if (!cfg.oracle.empty()) c["oracle"] = cfg.oracle;
  if (!cfg.orders.empty()) c["orders"] = cfg.orders;
  if (cfg.command == "bias") {
    c["group_size"] = cfg.group_size;
    c["normalizer"] = cfg.normalizer;
  }
  if (cfg.command == "sym") c["k"] = cfg.ks;
  c["two_param_cap"] = cfg.two_param_cap;
  c["primes"] = prime_selection_text(primes);
  return c;
}

json metadata(const RunConfig& cfg, const std::vector<Prime>& primes) {
  return {{"tool", "ecmoments"}, {"version", kToolVersion}, {"config", config_echo(cfg, primes)},
          {"prime_convention", kPrimeConvention}};
}

std::string csv_preamble(const RunConfig& cfg, const std::vector<Prime>& primes) {
  std::ostringstream os;
  os << "# tool: ecmoments " << kToolVersion << "\n";
  os << "# config: " << config_echo(cfg, primes).dump() << "\n";
  os << "# prime_convention: " << kPrimeConvention << "\n";
  return os.str();
}

std::string fmt(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string rational_str(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ResourceError, "cannot write " + path);
  f << content;
}

SweepOptions sweep_options(const RunConfig& cfg) {
  if (cfg.workers < 1) usage("--workers must be at least 1");
  return {cfg.workers, cfg.two_param_cap};
}

const OneParamFamily& require_one_param(const Family& fam, const std::string& command) {
  const auto* f = std::get_if<OneParamFamily>(&fam);
  if (!f) usage(command + " needs a one-parameter family");
  return *f;
}

// ---------------------------------------------------------------------------

int cmd_moments(const RunConfig& cfg, std::ostream& out) {
  const ResolvedFamily rf = resolve_family(cfg);
  const auto orders = normalize_orders(parse_int_list(cfg.orders.empty() ? "1,2" : cfg.orders, "order"));
  const auto primes = select_primes(cfg, 100);
  const MomentSeries series = moment_series(rf.family, primes, orders, sweep_options(cfg));

  std::ostringstream os;
  os << csv_preamble(cfg, primes);
  os << "prime,order,raw_sum,normalized,normalized_real\n";
  for (const auto& rec : series.records) {
    for (const auto& [r, s] : rec.raw_sums) {
      Rational q(s, rec.denominator());
      q.canonicalize();
      os << rec.prime.value() << "," << r << "," << s.get_str() << "," << rational_str(q) << ","
         << fmt(q.get_d()) << "\n";
    }
  }
  emit(cfg.out, os.str(), out);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.oracle.empty()) usage("--oracle is required");
  const OracleFormula& oracle = find_oracle(cfg.oracle);
  const FamilyParams params = parse_params(cfg.param_args);
  const Family fam = make_builtin(oracle.family, resolve_params(find_builtin(oracle.family), params));
  const auto primes = select_primes(cfg, 0, parameter_count(fam) == 1 ? 300 : 61);
  const VerificationReport rep = verify_oracle(oracle.name, primes, params, sweep_options(cfg));

  json rows = json::array();
  for (const auto& row : rep.rows) {
    rows.push_back({{"prime", row.prime.value()},
                    {"predicted", row.predicted.get_str()},
                    {"computed", row.computed.get_str()},
                    {"equal", row.equal()}});
  }
  json skipped = json::array();
  for (const auto& p : rep.skipped) skipped.push_back(p.value());
  json summary{{"metadata", metadata(cfg, primes)},
               {"oracle", rep.oracle},
               {"family", rep.family},
               {"order", rep.order},
               {"citation", oracle.citation},
               {"formula", oracle.formula},
               {"normalization", oracle.normalization},
               {"validity", oracle.validity},
               {"params", rep.params},
               {"all_equal", rep.all_equal},
               {"rows", rows},
               {"skipped_primes", skipped}};

  out << rep.oracle << " [" << oracle.citation << "] S_" << rep.order << " = " << oracle.formula << "\n";
  out << "  primes checked: " << rep.rows.size() << ", skipped (outside validity): " << rep.skipped.size()
      << "\n";
  if (const VerificationRow* bad_row = rep.first_mismatch()) {
    std::size_t mismatches = 0;
    for (const auto& row : rep.rows) mismatches += !row.equal();
    out << "  MISMATCH at p = " << bad_row->prime.value() << ": predicted " << bad_row->predicted.get_str()
        << ", computed " << bad_row->computed.get_str() << " (" << mismatches << " mismatching primes)\n";
  } else {
    out << "  all equal\n";
  }
  const std::string& json_path = !cfg.summary_out.empty() ? cfg.summary_out : cfg.out;
  if (!json_path.empty()) emit(json_path, summary.dump(2) + "\n", out);
  return rep.all_equal ? kExitOk : kExitMismatch;
}

json histogram_json(const Histogram& h) {
  return {{"edges", h.edges}, {"counts", h.counts}, {"rule", h.rule}};
}

int cmd_bias_odd(const RunConfig& cfg, const ResolvedFamily& rf, int order, std::ostream& out) {
  const auto primes = select_primes(cfg, 100);
  const int orders[] = {order};
  const MomentSeries series = moment_series(rf.family, primes, orders, sweep_options(cfg));
  const OddCoefficientSeries c = odd_coefficient_series(series, order);

  std::ostringstream os;
  os << csv_preamble(cfg, primes);
  os << "prime,raw_sum,coefficient,coefficient_exact\n";
  for (std::size_t i = 0; i < c.primes.size(); ++i) {
    os << c.primes[i].value() << "," << series.records[i].raw(order).get_str() << "," << fmt(c.values[i])
       << "," << rational_str(c.exact[i]) << "\n";
  }
  emit(cfg.out, os.str(), out);

  json summary{{"metadata", metadata(cfg, primes)},
               {"family", series.family},
               {"order", order},
               {"exponent", (order + 1) / 2},
               {"mean_coefficient", opt_json(c.mean)},
               {"n_primes", c.primes.size()}};
  if (const auto* f = std::get_if<OneParamFamily>(&rf.family); f && f->declared_rank()) {
    // Conjectured average main-term coefficient: -C_{(r+1)/2} * rank.
    const BigInt cat = catalan(static_cast<unsigned>((order + 1) / 2));
    summary["declared_rank"] = *f->declared_rank();
    summary["conjectured_mean"] = -cat.get_d() * *f->declared_rank();
  }
  emit(cfg.summary_out, summary.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_bias(const RunConfig& cfg, std::ostream& out) {
  const ResolvedFamily rf = resolve_family(cfg);
  const auto order_list = parse_int_list(cfg.orders.empty() ? "2" : cfg.orders, "order");
  if (order_list.size() != 1) usage("bias takes exactly one order");
  const int order = normalize_orders(order_list).front();
  if (order % 2 == 1) return cmd_bias_odd(cfg, rf, order, out);

  const NormalizerRequest norm = NormalizerRequest::parse(cfg.normalizer);
  const auto primes = select_primes(cfg, 100);
  const int orders[] = {order};
  const MomentSeries series = moment_series(rf.family, primes, orders, sweep_options(cfg));
  const BiasReport rep = group_stats(bias_series(series, order, norm), cfg.group_size);

  std::ostringstream os;
  os << csv_preamble(cfg, primes);
  os << "prime,raw_sum,main_term,residual,bias_" << exponent_suffix(rep.low_twice_exponent) << ",bias_"
     << exponent_suffix(rep.high_twice_exponent) << "\n";
  for (std::size_t i = 0; i < rep.primes.size(); ++i) {
    os << rep.primes[i].value() << "," << rep.raw[i].get_str() << "," << rep.main[i].get_str() << ","
       << rep.residual[i].get_str() << "," << fmt(rep.bias_low[i].value) << ","
       << fmt(rep.bias_high[i].value) << "\n";
  }
  emit(cfg.out, os.str(), out);

  const GroupStats& g = *rep.groups;
  const MainTerm mt = main_term(order, series.parameter_count);
  json summary{
      {"metadata", metadata(cfg, primes)},
      {"family", rep.family},
      {"order", order},
      {"parameter_count", rep.parameter_count},
      {"main_term",
       {{"coefficient", mt.coefficient.get_str()},
        {"exponent", mt.exponent},
        {"basis", rep.parameter_count == 1 ? "theorem" : "convention (leading term p^3 for two parameters)"}}},
      {"normalizer",
       {{"requested", cfg.normalizer},
        {"chosen", exponent_suffix(rep.chosen_twice_exponent())},
        {"chosen_label", exponent_label(rep.chosen_twice_exponent())},
        {"automatic", rep.decision.automatic},
        {"reason", rep.decision.reason},
        {"evidence",
         {{"first_quartile_max_abs", rep.decision.first_quartile_max},
          {"last_quartile_max_abs", rep.decision.last_quartile_max},
          {"ratio_threshold", rep.decision.ratio_threshold},
          {"absolute_threshold", rep.decision.absolute_threshold}}}}},
      {"n_primes", rep.primes.size()},
      {"mean", opt_json(rep.mean())},
      {"mean_" + exponent_suffix(rep.low_twice_exponent), opt_json(rep.mean_low)},
      {"mean_" + exponent_suffix(rep.high_twice_exponent), opt_json(rep.mean_high)},
      {"groups",
       {{"group_size", g.group_size},
        {"count", g.means.size()},
        {"dropped_primes", g.dropped},
        {"no_groups", g.no_groups},
        {"means", g.means},
        {"signs", g.signs},
        {"n_pos", g.n_pos},
        {"n_neg", g.n_neg},
        {"n_zero", g.n_zero},
        {"binomial_tail", g.binomial_tail},
        {"histogram", histogram_json(g.histogram)}}}};
  if (order == 2 && !series.records.empty()) {
    const MichelResidualSeries m = michel_residual_series(series);
    summary["michel"] = {{"final_running_mean", m.running_mean.back()},
                         {"reference_inverse_sqrt_n", m.reference.back()}};
  }
  emit(cfg.summary_out, summary.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_rank(const RunConfig& cfg, std::ostream& out) {
  const ResolvedFamily rf = resolve_family(cfg);
  const OneParamFamily& fam = require_one_param(rf.family, "rank");
  const auto primes = select_primes(cfg, 100);
  const double estimate = rank_estimate(fam, primes, sweep_options(cfg));

  json result{{"metadata", metadata(cfg, primes)},
              {"family", fam.name()},
              {"estimate", estimate},
              {"primes_used", primes.size()},
              {"largest_prime", primes.empty() ? 0 : primes.back().value()},
              {"log", "natural"}};
  bool rational = false;
  try {
    rational = is_rational_surface(fam);
  } catch (const Error& e) {
    result["rational_surface_error"] = e.what();
  }
  result["rational_surface"] = rational;
  if (!rational) result["warning"] = "theorem not known to apply: family is not a rational surface";
  if (fam.declared_rank()) result["declared_rank"] = *fam.declared_rank();
  emit(cfg.out, result.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_sym(const RunConfig& cfg, std::ostream& out) {
  const ResolvedFamily rf = resolve_family(cfg);
  const OneParamFamily& fam = require_one_param(rf.family, "sym");
  const auto ks = parse_int_list(cfg.ks, "k");
  const auto primes = select_primes(cfg, 100);

  std::ostringstream os;
  os << csv_preamble(cfg, primes);
  os << "prime,k,sym_sum,normalized\n";
  for (const Prime& p : primes) {
    for (const SymSum& s : sym_sums(fam, p, ks)) {
      os << p.value() << "," << s.k << "," << fmt(s.sum) << "," << fmt(s.normalized) << "\n";
    }
  }
  emit(cfg.out, os.str(), out);
  return kExitOk;
}

int cmd_list_families(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.family.empty()) {
    if (cfg.out.empty()) usage("list-families --family needs --out for the exported spec");
    save_family_spec(cfg.out, resolve_family(cfg).family);
    return kExitOk;
  }
  std::ostringstream os;
  os << std::left << std::setw(9) << "NAME" << std::setw(11) << "KIND" << std::setw(6) << "RANK"
     << std::setw(18) << "PARAMS" << "CITATION\n";
  for (const auto& entry : builtin_families()) {
    const Family fam = entry.make(entry.defaults);
    const char* kind = std::holds_alternative<OneParamFamily>(fam)   ? "one_param"
                       : std::holds_alternative<TwoParamFamily>(fam) ? "two_param"
                                                                      : "birch";
    std::string params;
    for (const auto& [k, v] : entry.defaults) params += (params.empty() ? "" : ",") + k + "=" + std::to_string(v);
    os << std::setw(9) << entry.name << std::setw(11) << kind << std::setw(6)
       << (entry.declared_rank ? std::to_string(*entry.declared_rank) : "-") << std::setw(18)
       << (params.empty() ? "-" : params) << entry.citation << "\n";
    os << "         " << entry.equation << "\n";
    std::string oracles;
    for (const auto& o : oracles_for_family(entry.name)) oracles += (oracles.empty() ? "" : ", ") + o;
    os << "         oracles: " << (oracles.empty() ? "none" : oracles) << "\n";
  }
  os << builtin_families().size() << " families\n";
  out << os.str();
  return kExitOk;
}

void add_family_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--family", cfg.family, "builtin:NAME or path to a family JSON spec");
  sub->add_option("--param", cfg.param_args, "free parameter of a builtin family, key=value");
  sub->add_option("--two-param-cap", cfg.two_param_cap, "largest prime for O(p^3) sweeps");
  sub->add_option("--workers", cfg.workers, "worker threads");
  sub->add_option("--out", cfg.out, "output path (default stdout)");
}

void add_prime_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--first", cfg.first, "first N primes >= 5")->each([&](const std::string&) { cfg.has_first = true; });
  sub->add_option("--prime-min", cfg.prime_min, "smallest prime")->each([&](const std::string&) { cfg.has_min = true; });
  sub->add_option("--prime-max", cfg.prime_max, "largest prime")->each([&](const std::string&) { cfg.has_max = true; });
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::CapExceeded:
    case ErrorCode::ResourceError:
      return kExitResource;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Moments of Dirichlet coefficients of elliptic-curve families", "ecmoments"};
  app.require_subcommand(1);

  auto* moments = app.add_subcommand("moments", "raw moment sums per prime (CSV)");
  add_family_options(moments, cfg);
  add_prime_options(moments, cfg);
  moments->add_option("--orders", cfg.orders, "comma-separated orders in 1..8 (default 1,2)");

  auto* verify = app.add_subcommand("verify", "check a closed-form oracle against the sweep");
  verify->add_option("--oracle", cfg.oracle, "oracle name")->required();
  verify->add_option("--param", cfg.param_args, "free parameter of the oracle's family, key=value");
  verify->add_option("--two-param-cap", cfg.two_param_cap, "largest prime for O(p^3) sweeps");
  verify->add_option("--workers", cfg.workers, "worker threads");
  verify->add_option("--out", cfg.out, "JSON report path");
  verify->add_option("--summary-out", cfg.summary_out, "JSON report path");
  add_prime_options(verify, cfg);

  auto* bias = app.add_subcommand("bias", "main-term residuals, group statistics (CSV + JSON)");
  add_family_options(bias, cfg);
  add_prime_options(bias, cfg);
  bias->add_option("--orders", cfg.orders, "single moment order (default 2)");
  bias->add_option("--group-size", cfg.group_size, "primes per group (default 50)");
  bias->add_option("--normalizer", cfg.normalizer, "auto, low, high, p, p32, p2, p52, p3, p72, ...");
  bias->add_option("--summary-out", cfg.summary_out, "JSON summary path (default stdout)");

  auto* rank = app.add_subcommand("rank", "first-moment rank estimate (JSON)");
  add_family_options(rank, cfg);
  add_prime_options(rank, cfg);

  auto* sym = app.add_subcommand("sym", "sums of sym_k over fibers (CSV)");
  add_family_options(sym, cfg);
  add_prime_options(sym, cfg);
  sym->add_option("--k", cfg.ks, "comma-separated k in 1..6 (default 1..6)");

  auto* list = app.add_subcommand("list-families", "list builtin families, or export one with --family/--out");
  list->add_option("--family", cfg.family, "family to export as a JSON spec");
  list->add_option("--param", cfg.param_args, "free parameter, key=value");
  list->add_option("--out", cfg.out, "path for the exported spec");

  std::vector<std::string> argv_store{"ecmoments"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (moments->parsed()) return (cfg.command = "moments", cmd_moments(cfg, out));
    if (verify->parsed()) return (cfg.command = "verify", cmd_verify(cfg, out));
    if (bias->parsed()) return (cfg.command = "bias", cmd_bias(cfg, out));
    if (rank->parsed()) return (cfg.command = "rank", cmd_rank(cfg, out));
    if (sym->parsed()) return (cfg.command = "sym", cmd_sym(cfg, out));
    if (list->parsed()) return (cfg.command = "list-families", cmd_list_families(cfg, out));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}

}  // namespace ecm
