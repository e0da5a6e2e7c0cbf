#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "ces/constructions.hpp"
#include "ces/verify.hpp"
#include "serialize.hpp"

namespace ces::cli {

namespace {

/// Raised for any user error; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string dims;
  std::string space = "S";
  std::string field = "rational";
  std::string format = "json";
  std::string out = "-";
  std::optional<int> size;
  bool min = false;
  std::string lambdas;
  std::string method = "ff";
  std::string primes;
  int restarts = 64;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int max_sweeps = 500;
  int level = 0;
  std::uint64_t prime = 0;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

Dims dims_of(const RunConfig& cfg) {
  try {
    return Dims::parse(cfg.dims);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> primes;
  for (const auto& item : split(text)) {
    try {
      std::size_t used = 0;
      const auto p = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      primes.push_back(p);
    } catch (const std::exception&) {
      throw UsageError("cannot parse prime '" + item + "'");
    }
  }
  return primes;
}

/// Explicit primes must all be usable; the default list is filtered.
std::vector<std::uint64_t> primes_for(const RunConfig& cfg, const Dims& dims) {
  if (cfg.primes.empty()) {
    std::vector<std::uint64_t> usable;
    for (std::uint64_t p : {5u, 7u, 11u}) {
      if (p > static_cast<std::uint64_t>(dims.N())) usable.push_back(p);
    }
    return usable;
  }
  auto primes = parse_primes(cfg.primes);
  for (auto p : primes) {
    if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
    if (p <= static_cast<std::uint64_t>(dims.N())) {
      throw UsageError("prime " + std::to_string(p) + " must exceed N = " + std::to_string(dims.N()));
    }
  }
  return primes;
}

CheckOptions check_options(const RunConfig& cfg, const Dims& dims) {
  CheckOptions opts;
  opts.use_ff = false;
  opts.use_als = false;
  for (const auto& m : split(cfg.method)) {
    if (m == "ff") {
      opts.use_ff = true;
    } else if (m == "als") {
      opts.use_als = true;
    } else {
      throw UsageError("unknown method '" + m + "' (expected ff, als)");
    }
  }
  if (!opts.use_ff && !opts.use_als) throw UsageError("no verification method selected");
  opts.primes = primes_for(cfg, dims);
  opts.budget = cfg.budget;
  opts.als.restarts = cfg.restarts;
  opts.als.max_sweeps = cfg.max_sweeps;
  opts.als.tol = cfg.tol;
  opts.als.seed = cfg.seed;
  if (cfg.restarts < 1) throw UsageError("--restarts must be >= 1");
  if (cfg.max_sweeps < 1) throw UsageError("--max-sweeps must be >= 1");
  return opts;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot open " + cfg.out + " for writing");
  file << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

/// Built-in spaces selectable with --space.
struct Space {
  enum class Kind { s, sperp, level, example1, example2_m, example2_mperp, example2_r } kind;
  int level = 0;
  std::string name;

  bool expect_witness() const { return kind == Kind::sperp || kind == Kind::example2_mperp; }
};

Space parse_space(const std::string& text) {
  using K = Space::Kind;
  if (text == "S") return {K::s, 0, text};
  if (text == "Sperp") return {K::sperp, 0, text};
  if (text == "example1") return {K::example1, 0, text};
  if (text == "example2-M") return {K::example2_m, 0, text};
  if (text == "example2-Mperp") return {K::example2_mperp, 0, text};
  if (text == "example2-R") return {K::example2_r, 0, text};
  if (text.rfind("level:", 0) == 0) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(text.substr(6), &used);
      if (used == text.size() - 6) return {K::level, n, text};
    } catch (const std::exception&) {
    }
  }
  throw UsageError("unknown space '" + text +
                   "' (expected S, Sperp, level:n, example1, example2-M, example2-Mperp, example2-R)");
}

/// Dims for a space: the example 2 spaces live in fixed 4 × 4 matrices.
Dims dims_for(const RunConfig& cfg, const Space& space) {
  const bool fixed = space.kind == Space::Kind::example2_m || space.kind == Space::Kind::example2_mperp ||
                     space.kind == Space::Kind::example2_r;
  if (fixed && cfg.dims.empty()) return Dims({4, 4});
  if (cfg.dims.empty()) throw UsageError("--dims is required");
  const Dims dims = dims_of(cfg);
  if (fixed && !(dims == Dims({4, 4}))) throw UsageError(space.name + " is defined for dims 4,4 only");
  if (space.kind == Space::Kind::example1 && dims.k() != 2) {
    throw UsageError("example1 needs exactly two factors");
  }
  if (space.kind == Space::Kind::level && (space.level < 0 || space.level > dims.N())) {
    throw UsageError("level " + std::to_string(space.level) + " outside [0, " +
                     std::to_string(dims.N()) + "]");
  }
  return dims;
}

Subspace<Rational> rational_space(const Dims& dims, const Space& space) {
  using K = Space::Kind;
  switch (space.kind) {
    case K::s:
      return entangled_subspace(dims);
    case K::sperp:
      return s_perp(dims);
    case K::level:
      return s_level(dims, space.level);
    case K::example1:
      return example1_space(dims[0], dims[1]);
    case K::example2_m:
      return example2_spaces().m;
    case K::example2_mperp:
      return example2_spaces().m_perp;
    case K::example2_r:
      break;
  }
  throw UsageError(space.name + " is a set of product vectors, not a subspace");
}

std::vector<StateVector<Rational>> integer_generators_for(const Dims& dims, const Space& space) {
  if (space.kind == Space::Kind::s) return entangled_generators(dims);
  if (space.kind == Space::Kind::sperp) return sperp_generators(dims);
  return integer_generators(rational_space(dims, space));
}

template <class T>
std::string render_basis(const RunConfig& cfg, const Dims& dims, const Field& field,
                         const Space& space, const std::vector<StateVector<T>>& rows) {
  if (cfg.format == "csv") return to_csv(rows);
  json doc = header_json(dims, field);
  doc["space"] = space.name;
  doc["dim"] = rows.size();
  doc["vectors"] = vectors_json(rows);
  return dump(doc);
}

int cmd_dims(const RunConfig& cfg, std::ostream& out) {
  const Dims dims = dims_of(cfg);
  const auto counts = level_counts(dims);
  const auto dim_s = dims.total() - (dims.N() + 1);
  if (cfg.format == "json") {
    json doc{{"dims", dims.local()}, {"N", dims.N()}, {"total", dims.total()}, {"dim_S", dim_s},
             {"a", counts}};
    emit(cfg, dump(doc), out);
    return kOk;
  }
  std::ostringstream table;
  table << std::left << std::setw(6) << "n" << std::setw(12) << "a_n" << std::setw(12) << "a_n-1"
        << std::setw(12) << "sum a" << "sum (a-1)\n";
  std::int64_t cum = 0, cum_s = 0;
  for (int n = 0; n <= dims.N(); ++n) {
    cum += counts[n];
    cum_s += counts[n] - 1;
    table << std::left << std::setw(6) << n << std::setw(12) << counts[n] << std::setw(12)
          << counts[n] - 1 << std::setw(12) << cum << cum_s << "\n";
  }
  table << "N = " << dims.N() << "\n"
        << "total = " << dims.total() << "\n"
        << "dim S = " << dim_s << "\n";
  emit(cfg, table.str(), out);
  return kOk;
}

int cmd_construct(const RunConfig& cfg, std::ostream& out) {
  const Space space = parse_space(cfg.space);
  const Dims dims = dims_for(cfg, space);
  if (cfg.format == "csv" && dims.k() != 2) throw UsageError("csv output needs exactly two factors");
  Field field;
  try {
    field = Field::parse(cfg.field);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (field.kind == FieldKind::complex_approx) throw UsageError("construct writes exact fields only");

  if (space.kind == Space::Kind::example2_r) {
    if (field.kind != FieldKind::rational) throw UsageError("example2-R is written over the rationals");
    const auto r = example2_spaces().r;
    if (cfg.format == "csv") {
      std::vector<StateVector<Rational>> rows;
      for (const auto& v : r) rows.push_back(v.expand());
      emit(cfg, to_csv(rows), out);
      return kOk;
    }
    json doc = header_json(dims, field);
    doc["space"] = space.name;
    doc["count"] = r.size();
    doc["span_dim"] = 7;
    json vs = json::array();
    for (const auto& v : r) vs.push_back(product_json(v));
    doc["vectors"] = std::move(vs);
    emit(cfg, dump(doc), out);
    return kOk;
  }

  switch (field.kind) {
    case FieldKind::rational:
      emit(cfg, render_basis(cfg, dims, field, space, rational_space(dims, space).rows()), out);
      break;
    case FieldKind::gaussian: {
      const auto s = rational_space(dims, space);
      std::vector<StateVector<GaussianRational>> gens;
      for (const auto& r : s.rows()) gens.push_back(convert<GaussianRational>(r, field));
      emit(cfg, render_basis(cfg, dims, field, space, Subspace<GaussianRational>::span(dims, field, gens).rows()),
           out);
      break;
    }
    case FieldKind::prime: {
      const auto s = reduce_mod_p(dims, integer_generators_for(dims, space), field.prime);
      emit(cfg, render_basis(cfg, dims, field, space, s.rows()), out);
      break;
    }
    case FieldKind::complex_approx:
      break;
  }
  return kOk;
}

int cmd_upb(const RunConfig& cfg, std::ostream& out) {
  const Dims dims = dims_of(cfg);
  if (cfg.min == cfg.size.has_value()) throw UsageError("pass exactly one of --min and --size");
  std::vector<Point> points;
  if (cfg.lambdas.empty()) {
    points = default_points(dims);
  } else {
    for (const auto& item : split(cfg.lambdas)) {
      try {
        points.push_back(parse_point(item));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
  }
  const CheckOptions opts = check_options(cfg, dims);

  std::vector<ProductVector<Rational>> vectors;
  UpbSpec spec{dims, dims.N() + 1, {}, points, {}};
  if (cfg.min) {
    vectors = minimal_upb(dims, points);
  } else {
    if (dims.k() != 2) throw UsageError("--size needs exactly two factors; use --min otherwise");
    auto built = any_dim_upb(dims, *cfg.size, points);
    spec = built.spec;
    vectors = std::move(built.vectors);
  }
  const auto report = verify_upb(dims, vectors, opts);

  json doc = header_json(dims, Field::rational());
  json vs = json::array();
  for (const auto& v : vectors) vs.push_back(product_json(v));
  doc["vectors"] = std::move(vs);
  doc["upb_spec"] = upb_spec_json(spec);
  doc["report"] = upb_report_json(report);
  emit(cfg, dump(doc), out);
  return report.status == UpbStatus::confirmed ? kOk : kContradiction;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Space space = parse_space(cfg.space);
  const Dims dims = dims_for(cfg, space);
  const auto s = rational_space(dims, space);
  const CheckOptions opts = check_options(cfg, dims);
  if (opts.use_ff) {
    if (opts.primes.empty()) {
      throw UsageError("no default prime exceeds N = " + std::to_string(dims.N()) + "; pass --primes");
    }
    for (auto p : opts.primes) {
      const auto needed = projective_product_count(dims, p);
      if (needed > opts.budget) throw UsageError(BudgetExceeded(needed, opts.budget).what());
    }
  }
  const auto reports = check_completely_entangled(s, opts);
  const bool ran = std::any_of(reports.begin(), reports.end(),
                               [](const VerificationReport& r) { return !r.skipped; });
  const bool witness = any_witness(reports);
  const bool consistent = !ran || witness == space.expect_witness();

  json doc = header_json(dims, Field::rational());
  doc["space"] = space.name;
  doc["dim"] = s.dim();
  doc["expected"] = to_string(space.expect_witness() ? Verdict::witness_found
                                                     : Verdict::no_product_vector_found);
  doc["verdict"] = ran ? to_string(witness ? Verdict::witness_found : Verdict::no_product_vector_found)
                       : "inconclusive";
  doc["consistent"] = consistent;
  json rs = json::array();
  for (const auto& r : reports) rs.push_back(report_json(r));
  doc["reports"] = std::move(rs);
  emit(cfg, dump(doc), out);
  return consistent ? kOk : kContradiction;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const Dims dims = dims_of(cfg);
  if (!is_prime(cfg.prime)) throw UsageError(std::to_string(cfg.prime) + " is not prime");
  if (cfg.prime <= static_cast<std::uint64_t>(dims.N())) {
    throw UsageError("prime must exceed N = " + std::to_string(dims.N()));
  }
  const auto needed = projective_product_count(dims, cfg.prime);
  if (needed > cfg.budget) throw UsageError(BudgetExceeded(needed, cfg.budget).what());
  const auto result = classify_sperp(dims, cfg.prime, cfg.budget);

  auto list = [](const std::vector<ProductVector<Fp>>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(product_json(v));
    return a;
  };
  json doc = header_json(dims, Field::fp(cfg.prime));
  doc["space"] = "Sperp";
  doc["pass"] = result.pass;
  doc["expected_count"] = cfg.prime + 1;
  doc["enumerated"] = result.enumerated;
  doc["vectors"] = list(result.found);
  doc["missing"] = list(result.missing);
  doc["extraneous"] = list(result.extraneous);
  emit(cfg, dump(doc), out);
  return result.pass ? kOk : kContradiction;
}

int cmd_onb(const RunConfig& cfg, std::ostream& out) {
  const Dims dims = dims_of(cfg);
  if (cfg.level < 0 || cfg.level > dims.N()) {
    throw UsageError("level " + std::to_string(cfg.level) + " outside [0, " + std::to_string(dims.N()) + "]");
  }
  const auto basis = onb_level(dims, cfg.level);
  json doc = header_json(dims, Field::complex_approx());
  doc["level"] = cfg.level;
  doc["a_n"] = basis.size();
  doc["vectors"] = vectors_json(basis);
  emit(cfg, dump(doc), out);
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Completely entangled subspaces and unextendible product bases", "ces"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto formats = CLI::IsMember({"json", "csv"});
  auto add_dims = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--dims", cfg.dims, "Local dimensions, e.g. 2,3,4");
    if (required) opt->required();
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "Output path, - for stdout"); };
  auto add_verifier = [&](CLI::App* sub) {
    sub->add_option("--method", cfg.method, "ff, als or ff,als");
    sub->add_option("--primes", cfg.primes, "Comma separated primes for the ff oracle (each > N)");
    sub->add_option("--restarts", cfg.restarts, "ALS restarts");
    sub->add_option("--tol", cfg.tol, "ALS sweep improvement tolerance");
    sub->add_option("--seed", cfg.seed, "ALS master seed");
    sub->add_option("--max-sweeps", cfg.max_sweeps, "ALS sweep limit per restart");
    sub->add_option("--budget", cfg.budget, "Maximum ff membership tests per prime");
  };

  auto* dims_cmd = app.add_subcommand("dims", "Level counts a_n and dimensions");
  add_dims(dims_cmd, true);
  dims_cmd->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  add_out(dims_cmd);

  auto* construct = app.add_subcommand("construct", "Write a basis of a built-in space");
  add_dims(construct, false);
  construct->add_option("--space", cfg.space, "S, Sperp, level:n, example1, example2-M, example2-Mperp, example2-R");
  construct->add_option("--field", cfg.field, "rational, gaussian or fp:p");
  construct->add_option("--format", cfg.format, "json or csv")->check(formats);
  add_out(construct);

  auto* upb = app.add_subcommand("upb", "Build and verify an unextendible product basis");
  add_dims(upb, true);
  upb->add_option("--size", cfg.size, "Size m (two factors only)");
  upb->add_flag("--min", cfg.min, "Minimal size N+1");
  upb->add_option("--lambdas", cfg.lambdas, "N+1 distinct points, e.g. 0,1,1/2,inf");
  add_verifier(upb);
  add_out(upb);

  auto* verify = app.add_subcommand("verify", "Search a built-in space for product vectors");
  add_dims(verify, false);
  verify->add_option("--space", cfg.space, "S, Sperp, level:n, example1, example2-M, example2-Mperp");
  add_verifier(verify);
  add_out(verify);

  auto* classify = app.add_subcommand("classify", "Enumerate the product vectors of S-perp over F_p");
  add_dims(classify, true);
  classify->add_option("--prime", cfg.prime, "Prime p > N")->required();
  classify->add_option("--budget", cfg.budget, "Maximum membership tests");
  add_out(classify);

  auto* onb = app.add_subcommand("onb", "Character orthonormal basis of one level");
  add_dims(onb, true);
  onb->add_option("--level", cfg.level, "Level n")->required();
  add_out(onb);

  std::vector<std::string> storage{"ces"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  if (dims_cmd->parsed() && cfg.format == "json" && dims_cmd->count("--format") == 0) cfg.format = "text";

  try {
    if (dims_cmd->parsed()) return cmd_dims(cfg, out);
    if (construct->parsed()) return cmd_construct(cfg, out);
    if (upb->parsed()) return cmd_upb(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (classify->parsed()) return cmd_classify(cfg, out);
    if (onb->parsed()) return cmd_onb(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal contradiction: " << e.what() << "\n";
    return kContradiction;
  }
  return kInvalidInput;
}

}  // namespace ces::cli
