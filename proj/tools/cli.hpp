#pragma once

#include <CLI11.hpp>
#include <polymul.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polymul::cli {

/// Bad flag combinations found after parsing; exit code 2 like parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  bool exact = false;
  std::string format = "json";
  std::string out_path;

  std::string basis;
  std::string nodes;
  std::string a;
  std::string b;
  std::string extra_nodes;
  std::vector<std::string> interval;
  std::string route = "right";
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::optional<std::size_t> pad;
  std::size_t p = 0;
  int power = 2;
  std::vector<std::size_t> alpha;
  std::vector<std::size_t> orders;

  std::size_t degree_max = 10;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  bool verify_basis_given = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
inline Json load_json(const std::string& arg, const char* what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument(std::string(what) + ": empty argument");
  const char c = arg[first];
  const bool inline_json = c == '[' || c == '{' || c == '"' || c == '-' || (c >= '0' && c <= '9');
  const std::string text = inline_json ? arg : read_file(arg);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": malformed JSON (" + e.what() + ")");
  }
}

template <Scalar S>
std::vector<S> load_scalars(const std::string& arg, const char* what) {
  const Json j = load_json(arg, what);
  if (j.is_object() && j.contains("nodes")) return vector_from_json<S>(j.at("nodes"));
  return vector_from_json<S>(j);
}

template <Scalar S>
BasisPtr<S> resolve_basis(const Config& cfg) {
  if (cfg.basis.empty()) throw UsageError("--basis is required");
  if (find_registered(cfg.basis)) {
    std::optional<std::vector<S>> nodes;
    if (!cfg.nodes.empty()) nodes = load_scalars<S>(cfg.nodes, "--nodes");
    return builtin_basis<S>(cfg.basis, std::move(nodes));
  }
  if (!std::filesystem::exists(cfg.basis))
    throw std::invalid_argument("unknown basis '" + cfg.basis + "' (not registered and no such file)");
  return custom_basis_from_json<S>(load_json(cfg.basis, "--basis"));
}

// One cache per POLYMUL_CACHE_DIR value, so the variable is honoured on every call.
template <Scalar S>
OpMatrixCache<S>& cli_cache() {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<OpMatrixCache<S>>> caches;
  const char* env = std::getenv("POLYMUL_CACHE_DIR");
  const std::string dir = env ? env : "";
  std::lock_guard lock(mutex);
  auto& slot = caches[dir];
  if (!slot) {
    std::optional<std::filesystem::path> path;
    if (!dir.empty()) path = std::filesystem::path(dir);
    slot = std::make_unique<OpMatrixCache<S>>(path);
  }
  return *slot;
}

template <Scalar S>
std::string csv_line(std::span<const S> v) {
  std::string line;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) line += ',';
    line += ScalarTraits<S>::format(v[i]);
  }
  return line + "\n";
}

inline void require_format(const Config& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  throw UsageError("--format " + cfg.format + " is not available for this subcommand");
}

template <Scalar S>
std::string emit_matrix(const Config& cfg, const Matrix<S>& m, const Json& meta, const std::string& csv_header) {
  if (cfg.format == "csv") return matrix_to_csv(m, csv_header);
  if (cfg.format == "coo") {
    Json j = meta;
    j.update(matrix_to_coo_json(m));
    return j.dump() + "\n";
  }
  Json j = meta;
  j["rows"] = matrix_rows_to_json(m);
  return j.dump() + "\n";
}

template <Scalar S>
std::string opmatrix_cmd(const Config& cfg) {
  require_format(cfg, {"json", "csv", "coo"});
  const auto basis = resolve_basis<S>(cfg);
  const auto h = cli_cache<S>().get(basis, cfg.n, cfg.k);
  const Matrix<S> shown = cfg.pad ? pad_to_Htilde(*h, *cfg.pad) : h->entries;
  if (cfg.format == "csv") return opmatrix_to_csv(*h, shown);
  if (cfg.format == "coo") {
    Json j{{"basis", basis->name()}, {"n", h->n}, {"k", h->k}};
    j.update(matrix_to_coo_json(shown));
    return j.dump() + "\n";
  }
  return opmatrix_to_json(*h, shown).dump() + "\n";
}

template <Scalar S>
std::string emit_dg(const Config& cfg, const DgPolynomial<S>& p) {
  require_format(cfg, {"json", "csv"});
  if (cfg.format == "csv") return "# coeffs basis=" + p.basis()->name() + "\n" + csv_line<S>(p.coeffs());
  return dg_to_json(p).dump() + "\n";
}

template <Scalar S>
std::string mul_cmd(const Config& cfg) {
  const auto basis = resolve_basis<S>(cfg);
  const auto a = dg_from_json<S>(load_json(cfg.a, "--a"), basis);
  const auto b = dg_from_json<S>(load_json(cfg.b, "--b"), basis);
  return emit_dg(cfg, multiply(a, b, cli_cache<S>()));
}

template <Scalar S>
std::string pow_cmd(const Config& cfg) {
  const auto basis = resolve_basis<S>(cfg);
  const auto a = dg_from_json<S>(load_json(cfg.a, "--a"), basis);
  return emit_dg(cfg, power(a, cfg.power, cli_cache<S>()));
}

template <Scalar S>
std::optional<std::pair<S, S>> interval_of(const Config& cfg) {
  if (cfg.interval.empty()) return std::nullopt;
  return std::pair{ScalarTraits<S>::parse(cfg.interval[0]), ScalarTraits<S>::parse(cfg.interval[1])};
}

template <Scalar S>
std::string emit_bernstein(const Config& cfg, const bernstein::BernsteinPolynomial<S>& p) {
  require_format(cfg, {"json", "csv"});
  if (cfg.format == "csv")
    return "# coeffs interval=" + ScalarTraits<S>::format(p.a()) + "," + ScalarTraits<S>::format(p.b()) + "\n" +
           csv_line<S>(p.coeffs());
  return bernstein_to_json(p).dump() + "\n";
}

template <Scalar S>
std::string bmul_cmd(const Config& cfg) {
  const auto iv = interval_of<S>(cfg);
  const auto a = bernstein_from_json<S>(load_json(cfg.a, "--a"), iv);
  const auto b = bernstein_from_json<S>(load_json(cfg.b, "--b"), iv);
  const auto route = cfg.route == "left" ? bernstein::BernsteinRoute::gamma_of_left : bernstein::BernsteinRoute::gamma_of_right;
  return emit_bernstein(cfg, bernstein::multiply(a, b, route));
}

template <Scalar S>
std::string bpow_cmd(const Config& cfg) {
  const auto a = bernstein_from_json<S>(load_json(cfg.a, "--a"), interval_of<S>(cfg));
  return emit_bernstein(cfg, bernstein::power(a, cfg.power));
}

template <Scalar S>
std::string blift_cmd(const Config& cfg) {
  if (!cfg.a.empty()) {
    const auto a = bernstein_from_json<S>(load_json(cfg.a, "--a"), interval_of<S>(cfg));
    return emit_bernstein(cfg, bernstein::lift(a, cfg.m));
  }
  const auto t = bernstein::lift_matrix<S>(cfg.n, cfg.m);
  return emit_matrix(cfg, t.matrix, Json{{"n", cfg.n}, {"m", cfg.m}},
                     "T n=" + std::to_string(cfg.n) + " m=" + std::to_string(cfg.m));
}

template <Scalar S>
std::string emit_lagrange(const Config& cfg, const lagrange::LagrangePolynomial<S>& p) {
  require_format(cfg, {"json", "csv"});
  if (cfg.format == "csv") {
    std::string s = "# node,value\n";
    for (std::size_t i = 0; i < p.nodes().size(); ++i)
      s += ScalarTraits<S>::format(p.nodes()[i]) + "," + ScalarTraits<S>::format(p.values()[i]) + "\n";
    return s;
  }
  return lagrange_to_json(p).dump() + "\n";
}

template <Scalar S>
std::optional<std::vector<S>> extra_of(const Config& cfg) {
  if (cfg.extra_nodes.empty()) return std::nullopt;
  return load_scalars<S>(cfg.extra_nodes, "--extra-nodes");
}

template <Scalar S>
std::string lmul_cmd(const Config& cfg) {
  const auto a = lagrange_from_json<S>(load_json(cfg.a, "--a"));
  const auto b = lagrange_from_json<S>(load_json(cfg.b, "--b"));
  return emit_lagrange(cfg, lagrange::multiply(a, b, extra_of<S>(cfg)));
}

template <Scalar S>
std::string lpow_cmd(const Config& cfg) {
  const auto a = lagrange_from_json<S>(load_json(cfg.a, "--a"));
  return emit_lagrange(cfg, lagrange::power(a, cfg.power, extra_of<S>(cfg)));
}

template <Scalar S>
std::string llift_cmd(const Config& cfg) {
  if (!cfg.a.empty()) {
    const auto a = lagrange_from_json<S>(load_json(cfg.a, "--a"));
    auto extra = extra_of<S>(cfg);
    if (!extra) extra = lagrange::augment_nodes<S>(a.nodes(), cfg.m > a.degree() ? cfg.m - a.degree() : 1);
    return emit_lagrange(cfg, lagrange::lift(a, std::span<const S>(*extra)));
  }
  if (cfg.nodes.empty()) throw UsageError("llift needs --a or --nodes");
  const auto base = load_scalars<S>(cfg.nodes, "--nodes");
  auto extra = extra_of<S>(cfg);
  if (!extra) {
    if (cfg.m + 1 <= base.size()) throw UsageError("llift needs --extra-nodes or -m greater than the base degree");
    extra = lagrange::augment_nodes<S>(base, cfg.m + 1 - base.size());
  }
  const auto r = lagrange::lift_matrix<S>(base, *extra);
  Json meta{{"nodes", vector_to_json<S>(r.base_nodes)}, {"extra_nodes", vector_to_json<S>(r.extra_nodes)}};
  return emit_matrix(cfg, r.matrix, meta,
                     "R n=" + std::to_string(base.size() - 1) + " m=" + std::to_string(base.size() + extra->size() - 1));
}

template <Scalar S>
std::string galerkin_cmd(const Config& cfg) {
  const auto basis = resolve_basis<S>(cfg);
  const auto u = univariate_U(basis, cfg.k, cfg.p, cli_cache<S>());
  return emit_matrix(cfg, u.matrix, Json{{"basis", basis->name()}, {"k", cfg.k}, {"p", cfg.p}},
                     "U basis=" + basis->name() + " k=" + std::to_string(cfg.k) + " p=" + std::to_string(cfg.p));
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

template <Scalar S>
std::string galerkin_g_cmd(const Config& cfg) {
  std::vector<BasisPtr<S>> bases;
  std::stringstream names(cfg.basis);
  std::string name;
  std::vector<std::string> listed;
  while (std::getline(names, name, ',')) {
    Config one = cfg;
    one.basis = name;
    bases.push_back(resolve_basis<S>(one));
    listed.push_back(bases.back()->name());
  }
  const auto g = assemble_G<S>(cfg.alpha, cfg.orders, bases, cli_cache<S>());
  Json meta{{"basis", listed}, {"alpha", cfg.alpha}, {"orders", cfg.orders}};
  return emit_matrix(cfg, g, meta, "G basis=" + cfg.basis + " alpha=" + join(cfg.alpha) + " orders=" + join(cfg.orders));
}

inline std::string basis_list_cmd(const Config& cfg) {
  require_format(cfg, {"json", "csv"});
  if (cfg.format == "csv") {
    std::string s = "# name,mode,orthonormal\n";
    for (const auto& info : kRegisteredBases)
      s += std::string(info.name) + "," + to_string(info.mode) + "," + (info.orthonormal ? "true" : "false") + "\n";
    return s;
  }
  Json list = Json::array();
  for (const auto& info : kRegisteredBases)
    list.push_back(Json{{"name", info.name},
                        {"mode", to_string(info.mode)},
                        {"orthonormal", info.orthonormal},
                        {"description", info.description}});
  return list.dump(2) + "\n";
}

template <typename Fn>
std::string dispatch(const Config& cfg, Fn&& fn) {
  return cfg.exact ? fn.template operator()<Rational>() : fn.template operator()<double>();
}

}  // namespace detail

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 domain error, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Polynomial multiplication, powers and lifting in recurrence, Bernstein and Lagrange bases", "polymul"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--exact", cfg.exact, "Exact rational arithmetic (bases with rational recurrences only)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "coo"}));
  app.add_option("--out", cfg.out_path, "Write the result to this file instead of stdout");

  auto* basis_list = app.add_subcommand("basis-list", "List registered bases");

  auto add_basis = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--basis", cfg.basis, "Registered basis name or custom basis JSON file");
    if (required) opt->required();
    sub->add_option("--nodes", cfg.nodes, "Newton nodes (JSON array or file)");
  };

  auto* opmatrix = app.add_subcommand("opmatrix", "Operational matrix H_{n,k}");
  add_basis(opmatrix, true);
  opmatrix->add_option("-n", cfg.n, "Degree n")->required();
  opmatrix->add_option("-k", cfg.k, "Multiplier index k")->required();
  opmatrix->add_option("--pad", cfg.pad, "Zero-pad to n+M+1 columns");

  auto* mul = app.add_subcommand("mul", "Product of two polynomials in one recurrence basis");
  add_basis(mul, true);
  mul->add_option("--a", cfg.a, "First factor (JSON or file)")->required();
  mul->add_option("--b", cfg.b, "Second factor (JSON or file)")->required();

  auto* pow = app.add_subcommand("pow", "Power of a polynomial in a recurrence basis");
  add_basis(pow, true);
  pow->add_option("--a", cfg.a, "Polynomial (JSON or file)")->required();
  pow->add_option("-p", cfg.power, "Exponent (>= 1)")->required();

  auto* bmul = app.add_subcommand("bmul", "Product of two Bernstein polynomials");
  bmul->add_option("--interval", cfg.interval, "Interval endpoints A B")->expected(2);
  bmul->add_option("--a", cfg.a, "First factor (JSON or file)")->required();
  bmul->add_option("--b", cfg.b, "Second factor (JSON or file)")->required();
  bmul->add_option("--route", cfg.route, "Which factor forms the Gamma matrix")->check(CLI::IsMember({"right", "left"}));

  auto* bpow = app.add_subcommand("bpow", "Power of a Bernstein polynomial");
  bpow->add_option("--interval", cfg.interval, "Interval endpoints A B")->expected(2);
  bpow->add_option("--a", cfg.a, "Polynomial (JSON or file)")->required();
  bpow->add_option("-p", cfg.power, "Exponent (>= 1)")->required();

  auto* blift = app.add_subcommand("blift", "Bernstein degree-raising matrix T_{n,m}, or lift a polynomial with --a");
  blift->add_option("-n", cfg.n, "Source degree");
  blift->add_option("-m", cfg.m, "Target degree")->required();
  blift->add_option("--a", cfg.a, "Polynomial to lift (JSON or file)");
  blift->add_option("--interval", cfg.interval, "Interval endpoints A B")->expected(2);

  auto* lmul = app.add_subcommand("lmul", "Product of two Lagrange polynomials");
  lmul->add_option("--a", cfg.a, "First factor (JSON or file)")->required();
  lmul->add_option("--b", cfg.b, "Second factor (JSON or file)")->required();
  lmul->add_option("--extra-nodes", cfg.extra_nodes, "Nodes to add (JSON array or file)");

  auto* lpow = app.add_subcommand("lpow", "Power of a Lagrange polynomial");
  lpow->add_option("--a", cfg.a, "Polynomial (JSON or file)")->required();
  lpow->add_option("-p", cfg.power, "Exponent (>= 1)")->required();
  lpow->add_option("--extra-nodes", cfg.extra_nodes, "Nodes to add (JSON array or file)");

  auto* llift = app.add_subcommand("llift", "Lagrange lifting matrix R, or lift a polynomial with --a");
  llift->add_option("--nodes", cfg.nodes, "Base nodes (JSON array or file)");
  llift->add_option("--extra-nodes", cfg.extra_nodes, "Nodes to add (JSON array or file)");
  llift->add_option("-m", cfg.m, "Target degree when nodes are generated");
  llift->add_option("--a", cfg.a, "Polynomial to lift (JSON or file)");

  auto* galerkin = app.add_subcommand("galerkin", "Stochastic Galerkin matrix U_{k,p}");
  add_basis(galerkin, true);
  galerkin->add_option("-k", cfg.k, "Index k")->required();
  galerkin->add_option("-p", cfg.p, "Order p")->required();

  auto* galerkin_g = app.add_subcommand("galerkin-g", "Kronecker-assembled G_alpha");
  galerkin_g->add_option("--basis", cfg.basis, "One basis, or one per dimension separated by commas")->required();
  galerkin_g->add_option("--alpha", cfg.alpha, "Multi-index, comma separated")->delimiter(',')->required();
  galerkin_g->add_option("--orders", cfg.orders, "Orders p_1..p_M, comma separated")->delimiter(',')->required();

  auto* verify = app.add_subcommand("verify", "Seeded self-check against the oracle layer");
  auto* verify_basis = verify->add_option("--basis", cfg.basis, "Restrict to one registered basis");
  verify->add_option("--degree-max", cfg.degree_max, "Maximum factor degree");
  verify->add_option("--trials", cfg.trials, "Random pairs per basis");
  verify->add_option("--seed", cfg.seed, "RNG seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "polymul: " << e.what() << "\n";
    return 2;
  }

  using namespace detail;
  try {
    std::string result;
    int code = 0;
    if (*basis_list) {
      result = basis_list_cmd(cfg);
    } else if (*opmatrix) {
      result = dispatch(cfg, [&]<Scalar S>() { return opmatrix_cmd<S>(cfg); });
    } else if (*mul) {
      result = dispatch(cfg, [&]<Scalar S>() { return mul_cmd<S>(cfg); });
    } else if (*pow) {
      result = dispatch(cfg, [&]<Scalar S>() { return pow_cmd<S>(cfg); });
    } else if (*bmul) {
      result = dispatch(cfg, [&]<Scalar S>() { return bmul_cmd<S>(cfg); });
    } else if (*bpow) {
      result = dispatch(cfg, [&]<Scalar S>() { return bpow_cmd<S>(cfg); });
    } else if (*blift) {
      if (cfg.a.empty() && blift->count("-n") == 0) throw UsageError("blift needs -n or --a");
      result = dispatch(cfg, [&]<Scalar S>() { return blift_cmd<S>(cfg); });
    } else if (*lmul) {
      result = dispatch(cfg, [&]<Scalar S>() { return lmul_cmd<S>(cfg); });
    } else if (*lpow) {
      result = dispatch(cfg, [&]<Scalar S>() { return lpow_cmd<S>(cfg); });
    } else if (*llift) {
      result = dispatch(cfg, [&]<Scalar S>() { return llift_cmd<S>(cfg); });
    } else if (*galerkin) {
      result = dispatch(cfg, [&]<Scalar S>() { return galerkin_cmd<S>(cfg); });
    } else if (*galerkin_g) {
      result = dispatch(cfg, [&]<Scalar S>() { return galerkin_g_cmd<S>(cfg); });
    } else if (*verify) {
      VerifyOptions opt;
      if (verify_basis->count() > 0) opt.basis = cfg.basis;
      opt.degree_max = cfg.degree_max;
      opt.trials = cfg.trials;
      opt.seed = cfg.seed;
      opt.exact = cfg.exact;
      const auto r = run_verify(opt);
      result = r.report;
      code = r.pass ? 0 : 1;
    }
    if (cfg.out_path.empty()) {
      out << result;
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot write '" + cfg.out_path + "'");
      file << result;
    }
    return code;
  } catch (const UsageError& e) {
    err << "polymul: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "polymul: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace polymul::cli
