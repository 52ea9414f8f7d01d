// divcs: boundary tables, streaming monitors, simulations and self-tests.
//
// Exit codes: 0 ok, 1 selftest failure, 2 bad configuration, 3 bad input
// line, 4 simulation acceptance failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "divcs/confseq.hpp"
#include "divcs/error.hpp"
#include "divcs/monitor.hpp"
#include "divcs/selftest.hpp"
#include "divcs/stitching.hpp"
#include "divcs/validation.hpp"

namespace {

using divcs::DivergenceKind;
using json = nlohmann::ordered_json;

constexpr int kExitSelftest = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;
constexpr int kExitAcceptance = 4;

// Configuration error tied to a flag.
struct FlagError {
  std::string flag;
  std::string message;
};

[[noreturn]] void bad(const std::string& flag, const std::string& msg) {
  throw FlagError{flag, msg};
}

// JSON config file. Top-level keys go to the invoked subcommand; an object
// keyed by a subcommand name targets that subcommand explicitly.
class JsonConfig : public CLI::Config {
 public:
  JsonConfig(std::string section, std::vector<std::string> subcommands)
      : section_(std::move(section)), subcommands_(std::move(subcommands)) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (auto& [key, value] : j.items()) {
      bool is_sub = std::find(subcommands_.begin(), subcommands_.end(), key) != subcommands_.end();
      if (is_sub && value.is_object()) {
        for (auto& [k2, v2] : value.items()) items.push_back(item({key}, k2, v2));
      } else {
        std::vector<std::string> parents;
        if (!section_.empty()) parents.push_back(section_);
        items.push_back(item(parents, key, value));
      }
    }
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }
  static CLI::ConfigItem item(std::vector<std::string> parents, const std::string& name,
                              const json& v) {
    CLI::ConfigItem it;
    it.parents = std::move(parents);
    it.name = name;
    if (v.is_array())
      for (const auto& e : v) it.inputs.push_back(scalar(e));
    else
      it.inputs.push_back(scalar(v));
    return it;
  }

  std::string section_;
  std::vector<std::string> subcommands_;
};

struct Options {
  std::string kind;
  double delta = 0.05;
  double alpha = 2, eta = 2, xi = 2;
  std::string halving = "real";
  std::string mode;
  std::string t_spec, s_spec;
  // kind parameters
  double B = 1;
  double Delta = 0;
  double bias_C = 0;
  std::int64_t k = 0;
  double kl_factor = 2;
  int d = 1;
  double sigma = 1, tau2 = 1;
  double var = 1, scale = 0, gamma_cov = 0;
  std::string cdf = "uniform";
  std::string p;
  std::string kernel = "gaussian:1";
  std::string cost;
  std::string mu0;
  // io
  std::string input = "-";
  std::string output = "-";
  // simulate
  std::string scenario;
  std::int64_t R = 0, T = 0;
  std::uint64_t seed = 1;
  std::string csv;
  bool timing = false;
  // selftest
  double corrupt_zeta = 0;
};

std::string fmt12(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, r.ptr);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    auto piece = s.substr(start, pos == std::string_view::npos ? s.npos : pos - start);
    auto b = piece.find_first_not_of(" \t\r");
    auto e = piece.find_last_not_of(" \t\r");
    out.emplace_back(b == piece.npos ? std::string() : std::string(piece.substr(b, e - b + 1)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  T v{};
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<double> parse_doubles(const std::string& flag, const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) {
    auto v = parse_number<double>(tok);
    if (!v) bad(flag, "cannot parse '" + tok + "' as a number");
    out.push_back(*v);
  }
  return out;
}

// "1..1024", "5", "1,2,4", "1..10,100"
std::vector<std::int64_t> parse_index_list(const std::string& flag, const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& tok : split(s, ',')) {
    auto dots = tok.find("..");
    if (dots == std::string::npos) {
      auto v = parse_number<std::int64_t>(tok);
      if (!v || *v < 1) bad(flag, "'" + tok + "' is not an index >= 1");
      out.push_back(*v);
    } else {
      auto a = parse_number<std::int64_t>(std::string_view(tok).substr(0, dots));
      auto b = parse_number<std::int64_t>(std::string_view(tok).substr(dots + 2));
      if (!a || !b || *a < 1 || *b < *a) bad(flag, "'" + tok + "' is not a range a..b, 1 <= a <= b");
      if (*b - *a > 10'000'000) bad(flag, "range '" + tok + "' is too long");
      for (auto t = *a; t <= *b; ++t) out.push_back(t);
    }
  }
  return out;
}

divcs::StitchingFunctions stitching(const Options& o) {
  if (!(o.delta > 0 && o.delta < 1)) bad("--delta", "must lie in (0, 1)");
  if (!(o.alpha > 1)) bad("--alpha", "must be > 1");
  if (!(o.eta > 1)) bad("--eta", "must be > 1");
  if (!(o.xi > 1)) bad("--xi", "must be > 1");
  divcs::HalvingRule rule;
  if (o.halving == "real")
    rule = divcs::HalvingRule::Real;
  else if (o.halving == "ceil")
    rule = divcs::HalvingRule::Ceil;
  else
    bad("--halving", "must be 'real' or 'ceil'");
  return divcs::StitchingFunctions(o.alpha, o.eta, o.xi, rule);
}

std::optional<divcs::Mode> parse_mode(const Options& o) {
  if (o.mode.empty()) return std::nullopt;
  if (o.mode == "as-stated") return divcs::Mode::AsStated;
  if (o.mode == "derivation-consistent" || o.mode == "dc") return divcs::Mode::DerivationConsistent;
  bad("--mode", "must be 'as-stated' or 'derivation-consistent'");
}

std::function<double(double)> parse_cdf(const std::string& s) {
  auto parts = split(s, ':');
  const auto& name = parts[0];
  std::vector<double> args;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    auto v = parse_number<double>(parts[i]);
    if (!v) bad("--cdf", "cannot parse '" + parts[i] + "'");
    args.push_back(*v);
  }
  if (name == "uniform") {
    double a = args.size() > 0 ? args[0] : 0.0, b = args.size() > 1 ? args[1] : 1.0;
    if (!(b > a)) bad("--cdf", "uniform needs a < b");
    return [a, b](double x) { return std::clamp((x - a) / (b - a), 0.0, 1.0); };
  }
  if (name == "normal") {
    double m = args.size() > 0 ? args[0] : 0.0, sd = args.size() > 1 ? args[1] : 1.0;
    if (!(sd > 0)) bad("--cdf", "normal needs sd > 0");
    return [m, sd](double x) { return 0.5 * std::erfc(-(x - m) / (sd * std::numbers::sqrt2)); };
  }
  bad("--cdf", "must be uniform[:a:b] or normal[:mean:sd]");
}

divcs::KernelSpec parse_kernel(const std::string& s) {
  auto parts = split(s, ':');
  std::optional<double> arg;
  if (parts.size() == 2) arg = parse_number<double>(parts[1]);
  if (parts.size() > 2 || (parts.size() == 2 && !arg)) bad("--kernel", "cannot parse '" + s + "'");
  if (parts[0] == "gaussian") {
    double h = arg.value_or(1.0);
    if (!(h > 0)) bad("--kernel", "bandwidth must be > 0");
    return divcs::KernelSpec::gaussian(h);
  }
  if (parts[0] == "linear") {
    if (!arg || !(*arg > 0)) bad("--kernel", "linear needs its bound, e.g. linear:4");
    return divcs::KernelSpec::linear(*arg);
  }
  bad("--kernel", "must be gaussian[:h] or linear:B");
}

Eigen::MatrixXd parse_cost(const std::string& s) {
  if (s.empty()) bad("--cost", "ot needs a cost matrix, rows separated by ';'");
  std::vector<std::vector<double>> rows;
  for (const auto& r : split(s, ';')) rows.push_back(parse_doubles("--cost", r));
  Eigen::MatrixXd c(Eigen::Index(rows.size()), Eigen::Index(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) bad("--cost", "rows have different lengths");
    for (std::size_t j = 0; j < rows[i].size(); ++j) c(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  }
  if (c.rows() != c.cols()) bad("--cost", "matrix must be square");
  return c;
}

divcs::CgfEnvelope envelope(const Options& o) {
  if (!(o.var > 0)) bad("--var", "must be > 0");
  if (o.scale < 0) bad("--scale", "must be >= 0");
  return o.scale > 0 ? divcs::CgfEnvelope::sub_exponential(0.0, o.var, o.scale)
                     : divcs::CgfEnvelope::sub_gaussian(0.0, o.var);
}

DivergenceKind monitor_kind(const Options& o) {
  if (o.kind.empty()) bad("--kind", "is required");
  auto k = divcs::parse_kind(o.kind);
  if (!k) bad("--kind", "unknown kind '" + o.kind + "' (dkw, ks2, mmd, ot, tv, kl, mean)");
  return *k;
}

divcs::ConfSeqConfig monitor_config(const Options& o, const CLI::App& sub) {
  divcs::ConfSeqConfig c;
  c.stitching = stitching(o);
  c.delta = o.delta;
  c.kind = monitor_kind(o);
  if (auto m = parse_mode(o))
    c.mode = *m;
  else if (c.kind == DivergenceKind::TvFinite)
    c.mode = divcs::Mode::AsStated;
  switch (c.kind) {
    case DivergenceKind::Dkw: c.cdf = parse_cdf(o.cdf); break;
    case DivergenceKind::KsTwoSample: break;
    case DivergenceKind::Mmd:
      c.kernel = parse_kernel(o.kernel);
      if (o.d < 1) bad("--d", "must be >= 1");
      c.dim = std::size_t(o.d);
      break;
    case DivergenceKind::OtFinite:
      c.cost = parse_cost(o.cost);
      c.Delta = sub.count("--Delta") ? o.Delta : c.cost.maxCoeff();
      if (!(c.Delta > 0) || c.Delta < c.cost.maxCoeff()) bad("--Delta", "must be > 0 and bound every cost");
      if (!sub.count("--bias-C")) bad("--bias-C", "ot needs the bias constant C in C/sqrt(min(t,s))");
      if (o.bias_C < 0) bad("--bias-C", "must be >= 0");
      c.bias = divcs::root_min_bias(o.bias_C);
      break;
    case DivergenceKind::TvFinite:
    case DivergenceKind::KlFinite: {
      if (o.p.empty()) bad("--p", "needs reference probabilities, e.g. 0.2,0.3,0.5");
      c.p = parse_doubles("--p", o.p);
      c.kl_factor = o.kl_factor;
      if (!(o.kl_factor > 0)) bad("--kl-factor", "must be > 0");
      break;
    }
    case DivergenceKind::Mean:
      if (o.d < 1) bad("--d", "must be >= 1");
      c.dim = std::size_t(o.d);
      c.envelope = envelope(o);
      if (!(o.gamma_cov >= 0 && o.gamma_cov < 1)) bad("--gamma-cov", "must lie in [0, 1)");
      c.gamma_cov = o.gamma_cov;
      c.mu0 = o.mu0.empty() ? std::vector<double>(c.dim, 0.0) : parse_doubles("--mu0", o.mu0);
      if (c.mu0.size() != c.dim) bad("--mu0", "needs --d coordinates");
      break;
  }
  try {
    c.validate();
  } catch (const divcs::Error& e) {
    bad("--" + std::string(divcs::to_string(c.kind)), e.what());
  }
  return c;
}

// ---- boundary --------------------------------------------------------------

int cmd_boundary(const Options& o, const CLI::App& sub, std::ostream& out) {
  const auto st = stitching(o);
  const auto mode = parse_mode(o);
  if (o.kind.empty()) bad("--kind", "is required");
  if (o.t_spec.empty()) bad("--t", "is required");
  const auto ts = parse_index_list("--t", o.t_spec);
  const std::string& kind = o.kind;
  const bool two = kind == "ks2" || kind == "mmd" || kind == "ot";
  std::vector<std::int64_t> ss;
  if (two) {
    if (o.s_spec.empty()) bad("--s", "is required for two-sample kind '" + kind + "'");
    ss = parse_index_list("--s", o.s_spec);
  } else if (!o.s_spec.empty()) {
    bad("--s", "only applies to two-sample kinds (ks2, mmd, ot)");
  }
  if (!(o.B > 0)) bad("--B", "must be > 0");
  const auto dc = divcs::Mode::DerivationConsistent;

  std::function<std::pair<double, double>(std::int64_t, std::int64_t)> row;
  const double inf = std::numeric_limits<double>::infinity();
  if (kind == "dkw") {
    row = [&](std::int64_t t, std::int64_t) {
      return std::pair{divcs::dkw_boundary(t, o.delta, st), divcs::kappa_upper(t, o.delta, st, 1.0)};
    };
  } else if (kind == "ks2") {
    row = [&](std::int64_t t, std::int64_t s) {
      auto r = divcs::ks_two_sample_boundary(t, s, o.delta, st, mode.value_or(dc));
      return std::pair{r.gamma, r.kappa};
    };
  } else if (kind == "mmd") {
    row = [&](std::int64_t t, std::int64_t s) {
      auto r = divcs::mmd_boundary(t, s, o.delta, st, o.B, mode.value_or(dc));
      return std::pair{r.gamma, r.kappa};
    };
  } else if (kind == "mmd-u") {
    row = [&](std::int64_t t, std::int64_t) {
      double g = divcs::mmd_u_boundary(t, o.delta, st, o.B);
      return std::pair{g, g};
    };
  } else if (kind == "ot") {
    if (!(o.Delta > 0)) bad("--Delta", "ot needs the cost bound Delta > 0");
    if (!sub.count("--bias-C") || o.bias_C < 0) bad("--bias-C", "ot needs a bias constant C >= 0");
    auto bias = divcs::root_min_bias(o.bias_C);
    row = [&, bias](std::int64_t t, std::int64_t s) {
      auto r = divcs::ot_boundary(t, s, o.delta, st, o.Delta, bias, mode.value_or(dc));
      return std::pair{r.gamma, r.kappa};
    };
  } else if (kind == "tv") {
    if (o.k < 2) bad("--k", "tv needs the alphabet size k >= 2");
    row = [&](std::int64_t t, std::int64_t) {
      return std::pair{divcs::tv_finite_boundary(t, o.delta, st, o.k, mode.value_or(divcs::Mode::AsStated)),
                       divcs::kappa_upper(t, o.delta, st, 1.0)};
    };
  } else if (kind == "kl") {
    if (o.k < 2) bad("--k", "kl needs the alphabet size k >= 2");
    if (!(o.kl_factor > 0)) bad("--kl-factor", "must be > 0");
    auto kl = std::make_shared<divcs::KlFiniteBoundary>(o.delta, st, o.k, divcs::LambdaSchedule{},
                                                        o.kl_factor);
    row = [kl, inf](std::int64_t t, std::int64_t) { return std::pair{(*kl)(t), inf}; };
  } else if (kind == "mean") {
    if (o.d < 1) bad("--d", "must be >= 1");
    if (!(o.gamma_cov >= 0 && o.gamma_cov < 1)) bad("--gamma-cov", "must lie in [0, 1)");
    auto env = envelope(o);
    row = [&, env](std::int64_t t, std::int64_t) {
      double g = divcs::mean_boundary(t, o.delta, st, env, o.d, o.gamma_cov);
      return std::pair{g, g};
    };
  } else if (kind == "smoothed-tv" || kind == "smoothed-w1") {
    if (o.d < 1) bad("--d", "must be >= 1");
    if (!(o.sigma > 0)) bad("--sigma", "must be > 0");
    if (!(o.tau2 > 0)) bad("--tau2", "must be > 0");
    auto which = kind == "smoothed-tv" ? divcs::SmoothedKind::TV : divcs::SmoothedKind::W1;
    row = [&, which, inf](std::int64_t t, std::int64_t) {
      return std::pair{divcs::smoothed_boundary(t, o.delta, st, o.d, o.sigma, o.tau2, which), inf};
    };
  } else if (kind == "entropy") {
    if (o.d < 1) bad("--d", "must be >= 1");
    if (!(o.sigma > 0)) bad("--sigma", "must be > 0");
    double Cd = divcs::smoothed_constants(o.d, o.sigma, 1.0).C_d;
    row = [&, Cd](std::int64_t t, std::int64_t) {
      double g = divcs::entropy_bound(t, o.delta, st, o.d, o.sigma, Cd);
      return std::pair{g, g};
    };
  } else {
    bad("--kind",
        "unknown kind '" + kind +
            "' (dkw, ks2, mmd, mmd-u, ot, tv, kl, mean, smoothed-tv, smoothed-w1, entropy)");
  }

  // Evaluate everything before printing so a late failure leaves no partial table.
  std::ostringstream buf;
  buf << "t,s,gamma,kappa\n";
  try {
    for (auto t : ts) {
      if (!two) {
        auto [g, k] = row(t, 0);
        buf << t << ",," << fmt12(g) << ',' << fmt12(k) << '\n';
        continue;
      }
      for (auto s : ss) {
        auto [g, k] = row(t, s);
        buf << t << ',' << s << ',' << fmt12(g) << ',' << fmt12(k) << '\n';
      }
    }
  } catch (const divcs::Error& e) {
    bad("--kind " + kind, e.what());
  }
  out << buf.str();
  return 0;
}

// ---- monitor ---------------------------------------------------------------

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int cmd_monitor(const Options& o, const CLI::App& sub, std::ostream& out) {
  auto cfg = monitor_config(o, sub);
  const bool categorical = cfg.kind == DivergenceKind::TvFinite ||
                           cfg.kind == DivergenceKind::KlFinite ||
                           cfg.kind == DivergenceKind::OtFinite;
  std::ifstream file;
  std::istream* in = &std::cin;
  if (o.input != "-") {
    file.open(o.input);
    if (!file) bad("--input", "cannot open '" + o.input + "'");
    in = &file;
  }
  divcs::ConfSeqState state(cfg);
  std::string line;
  std::int64_t lineno = 0;
  auto malformed = [&](const std::string& why) {
    std::cerr << "error: line " << lineno << ": " << why << '\n';
    return kExitInput;
  };
  while (std::getline(*in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto tok = split(line, ',');
    if (tok.size() < 2) return malformed("expected 'stream,value'");
    divcs::Stream which;
    if (tok[0] == "x" || tok[0] == "X")
      which = divcs::Stream::X;
    else if (tok[0] == "y" || tok[0] == "Y")
      which = divcs::Stream::Y;
    else
      return malformed("stream must be x or y, got '" + tok[0] + "'");
    divcs::Observation obs;
    if (categorical) {
      if (tok.size() != 2) return malformed("expected one integer category");
      auto v = parse_number<std::int64_t>(tok[1]);
      if (!v) return malformed("cannot parse category '" + tok[1] + "'");
      obs = *v;
    } else {
      std::vector<double> v;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        auto x = parse_number<double>(tok[i]);
        if (!x) return malformed("cannot parse value '" + tok[i] + "'");
        v.push_back(*x);
      }
      if (v.size() == 1 && cfg.kind != DivergenceKind::Mmd && cfg.kind != DivergenceKind::Mean)
        obs = v[0];
      else
        obs = std::move(v);
    }
    divcs::IntervalRecord rec;
    try {
      rec = state.update(obs, which);
    } catch (const divcs::Error& e) {
      return malformed(e.what());
    }
    json j;
    j["t"] = rec.t;
    j["s"] = rec.s;
    j["estimate"] = number_or_null(rec.estimate);
    j["lower"] = number_or_null(rec.lower);
    j["upper"] = number_or_null(rec.upper);
    j["reject"] = rec.reject_null;
    out << j.dump() << '\n' << std::flush;
  }
  return 0;
}

// ---- simulate --------------------------------------------------------------

int cmd_simulate(const Options& o, std::ostream& out) {
  if (o.scenario.empty()) bad("--scenario", "is required");
  if (!divcs::is_scenario(o.scenario)) {
    std::string names;
    for (const auto& n : divcs::scenario_names()) names += (names.empty() ? "" : ", ") + n;
    bad("--scenario", "unknown scenario '" + o.scenario + "' (" + names + ")");
  }
  if (!(o.delta > 0 && o.delta < 1)) bad("--delta", "must lie in (0, 1)");
  if (o.R < 0) bad("--R", "must be >= 1");
  if (o.T < 0) bad("--T", "must be >= 1");
  divcs::ScenarioParams params{o.R, o.T, o.delta, o.seed};
  auto rep = divcs::run_scenario(o.scenario, params);
  out << rep.to_json(o.timing) << '\n';
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) bad("--csv", "cannot write '" + o.csv + "'");
    f << rep.per_replicate_csv();
  }
  return rep.asserted && !rep.passed ? kExitAcceptance : 0;
}

// ---- selftest --------------------------------------------------------------

int cmd_selftest(const Options& o, std::ostream& out) {
  if (o.corrupt_zeta != 0) {
    for (double a : {1.5, 2.0, 3.0}) divcs::StitchingFunctions(a, 2.0, 2.0);
    divcs::testing::corrupt_zeta_cache(o.corrupt_zeta);
  }
  auto results = divcs::run_selftest();
  for (const auto& r : results) {
    if (r.passed) {
      out << "ok   " << r.name << '\n';
    } else {
      out << "FAIL " << r.name << ": " << r.detail << '\n';
      std::cerr << "selftest failed: " << r.name << '\n';
      return kExitSelftest;
    }
  }
  out << "selftest passed (" << results.size() << " invariants)\n";
  return 0;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--kind", o.kind, "Divergence kind");
  sub->add_option("--delta", o.delta, "Error probability in (0, 1)");
  sub->add_option("--alpha", o.alpha, "Stitching exponent > 1");
  sub->add_option("--eta", o.eta, "Epoch base for the first index");
  sub->add_option("--xi", o.xi, "Epoch base for the second index");
  sub->add_option("--halving", o.halving, "Half-index rule: real or ceil");
  sub->add_option("--mode", o.mode, "as-stated or derivation-consistent");
  sub->add_option("--B", o.B, "Kernel bound (mmd, mmd-u)");
  sub->add_option("--Delta", o.Delta, "Cost bound (ot)");
  sub->add_option("--bias-C", o.bias_C, "Bias constant C in C/sqrt(min(t,s)) (ot)");
  sub->add_option("--k", o.k, "Alphabet size (tv, kl boundary tables)");
  sub->add_option("--kl-factor", o.kl_factor, "Leading factor of the KL radius");
  sub->add_option("--d", o.d, "Dimension");
  sub->add_option("--sigma", o.sigma, "Smoothing bandwidth");
  sub->add_option("--tau2", o.tau2, "Sub-Gaussian variance proxy of the data");
  sub->add_option("--var", o.var, "Variance proxy of the mean envelope");
  sub->add_option("--scale", o.scale, "Sub-exponential scale (0 = sub-Gaussian)");
  sub->add_option("--gamma-cov", o.gamma_cov, "Covering parameter in [0, 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anytime-valid confidence sequences for divergences"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  auto* boundary = app.add_subcommand("boundary", "Tabulate boundary radii as CSV");
  add_common(boundary, o);
  boundary->add_option("--t", o.t_spec, "Indices: 5, 1..1024 or 1,2,4");
  boundary->add_option("--s", o.s_spec, "Second-sample indices (two-sample kinds)");
  boundary->add_option("-o,--output", o.output, "Output file (- for stdout)");

  auto* monitor = app.add_subcommand("monitor", "Stream 'stream,value' lines to JSONL intervals");
  add_common(monitor, o);
  monitor->add_option("--cdf", o.cdf, "Reference cdf for dkw: uniform[:a:b] or normal[:m:sd]");
  monitor->add_option("--p", o.p, "Reference probabilities for tv/kl");
  monitor->add_option("--kernel", o.kernel, "gaussian[:h] or linear:B");
  monitor->add_option("--cost", o.cost, "Cost matrix for ot, rows split by ';'");
  monitor->add_option("--mu0", o.mu0, "Hypothesised mean for the mean kind");
  monitor->add_option("-i,--input", o.input, "Input file (- for stdin)");
  monitor->add_option("-o,--output", o.output, "Output file (- for stdout)");

  auto* simulate = app.add_subcommand("simulate", "Run a validation scenario");
  simulate->add_option("--scenario", o.scenario, "Scenario name");
  simulate->add_option("--R", o.R, "Replications (0 = scenario default)");
  simulate->add_option("--T", o.T, "Horizon (0 = scenario default)");
  simulate->add_option("--delta", o.delta, "Error probability");
  simulate->add_option("--seed", o.seed, "Base seed");
  simulate->add_option("--csv", o.csv, "Write per-replicate first-violation times here");
  simulate->add_flag("--timing", o.timing, "Include wall time in the report");
  simulate->add_option("-o,--output", o.output, "Output file (- for stdout)");

  auto* selftest = app.add_subcommand("selftest", "Run the fast invariant suite");
  selftest->add_option("--corrupt-zeta", o.corrupt_zeta)->group("");

  std::string section;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "boundary" || a == "monitor" || a == "simulate" || a == "selftest") {
      section = a;
      break;
    }
  }
  app.set_config("--config", "", "JSON config file; flags take precedence");
  app.config_formatter(std::make_shared<JsonConfig>(
      section, std::vector<std::string>{"boundary", "monitor", "simulate", "selftest"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  try {
    if (o.output != "-") {
      file.open(o.output);
      if (!file) bad("--output", "cannot write '" + o.output + "'");
      out = &file;
    }
    if (boundary->parsed()) return cmd_boundary(o, *boundary, *out);
    if (monitor->parsed()) return cmd_monitor(o, *monitor, *out);
    if (simulate->parsed()) return cmd_simulate(o, *out);
    return cmd_selftest(o, *out);
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.flag << ": " << e.message << '\n';
    return kExitConfig;
  } catch (const divcs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
