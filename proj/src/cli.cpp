#include "multdens/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "multdens/asymptotics.hpp"
#include "multdens/enumeration.hpp"
#include "multdens/errors.hpp"
#include "multdens/experiments.hpp"
#include "multdens/intervals.hpp"
#include "multdens/limits.hpp"
#include "multdens/sums.hpp"

namespace multdens::cli {

namespace {

const std::vector<std::pair<Command, std::string>>& command_table() {
  static const std::vector<std::pair<Command, std::string>> table = {
      {Command::limit, "limit"},         {Command::bound, "bound"},
      {Command::density, "density"},     {Command::sums, "sums"},
      {Command::lemma_check, "lemma-check"}, {Command::corollary, "corollary"},
      {Command::truncation, "truncation"}, {Command::theorem2, "theorem2"},
      {Command::theorem5, "theorem5"},   {Command::enumerate, "enumerate"},
  };
  return table;
}

const std::map<std::string, std::string>& column_help() {
  static const std::map<std::string, std::string> help = {
      {"limit", "Exact limit density of M(A,B|q). Columns: density,decimal"},
      {"bound", "Product lower bound on 1 - density. Columns: "
                "bound,bound_decimal,one_minus_density,one_minus_density_decimal,holds,trivial"},
      {"density", "Empirical density of M(A,B|q). Columns: x,lambda1,lambda2,r,density,member_sum,full_sum"},
      {"sums", "Weighted sums over Q_{q0,q1,q2}, direct vs Moebius. Columns: "
               "x,lambda1,lambda2,r,direct,mobius,rel_diff,terms,precision_warnings"},
      {"lemma-check", "Sum against its asymptotic main term. Columns: "
                      "x,lambda1,lambda2,r,empirical,main_term,ratio,error_scale"},
      {"corollary", "Class ratio against Pi(q0,q1,q2). Columns: "
                    "x,lambda1,lambda2,r,class_sum,full_sum,ratio,pi,pi_decimal,distance"},
      {"truncation", "Integer densities of M(A_N). Columns: N,x,nu0,nu1"},
      {"theorem2", "All four densities at a fixed interval. Columns: x,nu00,nu01,nu10,nu11,status"},
      {"theorem5", "nu11 along an interval family vs the exact limit. Columns: "
                   "x,lambda1,lambda2,nu11,reference,reference_decimal,distance"},
      {"enumerate", "Reduced fractions of F^I_x ordered by (n, m). Columns: m,n"},
  };
  return help;
}

const std::vector<u64> kDefaultGrid{10, 100, 1000, 10000, 30000};

std::string join(const std::vector<u64>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<u64> parse_list(const std::string& text, const std::string& flag) {
  std::vector<u64> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item(text.data() + pos, comma - pos);
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || v == 0) {
      throw UsageError(flag + ": expected comma-separated positive integers, got '" + text + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

u64 parse_positive(const std::string& text, const std::string& flag) {
  const auto v = parse_list(text, flag);
  if (v.size() != 1) throw UsageError(flag + ": expected a single positive integer, got '" + text + "'");
  return v.front();
}

std::vector<u64> parse_generator(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "primes") {
    const auto bounds = parse_list(args, "--A-gen");
    if (bounds.size() != 2) throw UsageError("--A-gen: primes:LO,HI expected, got '" + text + "'");
    return primes_in_range(bounds[0], bounds[1]);
  }
  if (kind == "ranges") {
    std::vector<std::pair<u64, u64>> ranges;
    std::stringstream ss(args);
    std::string part;
    while (std::getline(ss, part, ',')) {
      const auto dash = part.find('-');
      if (dash == std::string::npos) throw UsageError("--A-gen: ranges:LO-HI,... expected, got '" + text + "'");
      ranges.emplace_back(parse_positive(part.substr(0, dash), "--A-gen"),
                          parse_positive(part.substr(dash + 1), "--A-gen"));
    }
    if (ranges.empty()) throw UsageError("--A-gen: no ranges in '" + text + "'");
    return interval_union(ranges);
  }
  throw UsageError("--A-gen: unknown generator '" + text + "' (primes:LO,HI or ranges:LO-HI,...)");
}

std::vector<u64> normalized(std::vector<u64> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// ---- tabular output -------------------------------------------------------

using Cell = std::variant<std::monostate, u64, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_field(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, u64>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string q = "\"";
          for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          return q + "\"";
        }
      },
      c);
}

nlohmann::json json_field(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
        } else {
          return v;
        }
      },
      c);
}

void write_table(const Table& t, const RunConfig& config, u64 sieve_limit, std::ostream& out) {
  if (config.format == OutputFormat::csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << '\n';
    }
    return;
  }
  nlohmann::json doc;
  nlohmann::json meta;
  meta["command"] = command_name(config.command);
  meta["A"] = config.a;
  meta["B"] = config.b;
  meta["q"] = config.q;
  meta["q0"] = config.q0;
  meta["q1"] = config.q1;
  meta["q2"] = config.q2;
  meta["family"] = config.family;
  meta["exponents"] = config.exponents;
  meta["x_grid"] = config.x_grid;
  meta["N_grid"] = config.n_grid;
  meta["version"] = kVersion;
  meta["sieve_limit"] = sieve_limit;
  doc["meta"] = meta;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_field(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

// ---- command dispatch -----------------------------------------------------

IntervalAt interval_at(const IntervalFamily& family, u64 x) {
  if (const auto* c = std::get_if<ConstantFamily>(&family.kind())) {
    return IntervalAt::exact(c->lambda1, c->lambda2, static_cast<double>(x));
  }
  return family.evaluate(static_cast<double>(x));
}

double max_lambda2(const IntervalFamily& family, const std::vector<u64>& grid) {
  double out = 0.0;
  for (u64 x : grid) out = std::max(out, interval_at(family, x).lambda2());
  return out;
}

Table run_command(const RunConfig& c, const FactorSieve& sieve, const ExecPolicy& policy, std::ostream& err) {
  Table t;
  const IntervalFamily family = IntervalFamily::parse(c.family);
  const SumExponents exps = SumExponents::parse(c.exponents);
  auto warn = [&](u64 x, u64 count) {
    if (count > 0) {
      err << "warning: x=" << x << ": " << count
          << " interval boundaries within rounding distance of an integer; results may shift by one term\n";
    }
  };

  switch (c.command) {
    case Command::limit: {
      const DensityValue d = ie_density(c.a, c.b, c.q, sieve, policy.threads);
      t.columns = {"density", "decimal"};
      t.rows.push_back({d.to_string(), d.to_double()});
      break;
    }
    case Command::bound: {
      const Theorem4Check r = verify_theorem4(c.a, c.b, c.q, sieve);
      t.columns = {"bound", "bound_decimal", "one_minus_density", "one_minus_density_decimal", "holds", "trivial"};
      t.rows.push_back({to_string(r.bound), to_double(r.bound), to_string(r.one_minus_density),
                        to_double(r.one_minus_density), r.holds, r.trivial});
      break;
    }
    case Command::density: {
      const MultiplesSpec spec(c.a, c.b, c.q);
      t.columns = {"x", "lambda1", "lambda2", "r", "density", "member_sum", "full_sum"};
      for (u64 x : c.x_grid) {
        const IntervalAt interval = interval_at(family, x);
        const DensityPoint p = density_point(x, interval, spec, sieve, policy);
        warn(x, p.sums.precision_warnings);
        t.rows.push_back({x, interval.lambda1(), interval.lambda2(), c.exponents, p.density(exps),
                          p.sums.member.get(exps), p.sums.total.get(exps)});
      }
      break;
    }
    case Command::sums: {
      const CoprimalitySpec spec(c.q0, c.q1, c.q2);
      t.columns = {"x", "lambda1", "lambda2", "r", "direct", "mobius", "rel_diff", "terms", "precision_warnings"};
      for (u64 x : c.x_grid) {
        const IntervalAt interval = interval_at(family, x);
        const SumResult direct = s_direct(
            x, interval, exps, [&](const ReducedFraction& f) { return in_coprimality_class(f, spec); }, sieve,
            policy);
        const SumResult mobius = s_mobius(x, interval, exps, spec, sieve, policy);
        warn(x, direct.precision_warnings);
        const double rel = std::fabs(direct.value - mobius.value) / std::max(direct.value, 1.0);
        t.rows.push_back({x, interval.lambda1(), interval.lambda2(), c.exponents, direct.value, mobius.value, rel,
                          direct.term_count, direct.precision_warnings});
      }
      break;
    }
    case Command::lemma_check: {
      const CoprimalitySpec spec(c.q0, c.q1, c.q2);
      t.columns = {"x", "lambda1", "lambda2", "r", "empirical", "main_term", "ratio", "error_scale"};
      for (u64 x : c.x_grid) {
        const MainTermReport r = lemma_check(x, interval_at(family, x), exps, spec, sieve, policy);
        t.rows.push_back({x, r.interval.lambda1(), r.interval.lambda2(), c.exponents, r.empirical, r.main_term,
                          r.ratio, r.error_scale});
      }
      break;
    }
    case Command::corollary: {
      const CoprimalitySpec spec(c.q0, c.q1, c.q2);
      t.columns = {"x", "lambda1", "lambda2", "r", "class_sum", "full_sum", "ratio", "pi", "pi_decimal", "distance"};
      for (const CorollaryRow& r : corollary_ratio_report(c.x_grid, family, exps, spec, sieve, policy)) {
        t.rows.push_back({r.term.x, r.term.interval.lambda1(), r.term.interval.lambda2(), c.exponents,
                          r.term.empirical, r.full_sum, r.ratio, to_string(r.pi), to_double(r.pi), r.distance});
      }
      break;
    }
    case Command::truncation: {
      t.columns = {"N", "x", "nu0", "nu1"};
      for (const TruncationRow& r : run_truncation({c.a, c.n_grid, c.x_grid}, policy)) {
        t.rows.push_back({r.n, r.x, r.nu0, r.nu1});
      }
      break;
    }
    case Command::theorem2: {
      const MultiplesSpec spec(c.a, c.b, c.q);
      t.columns = {"x", "nu00", "nu01", "nu10", "nu11", "status"};
      for (const Theorem2Row& r : run_theorem2_table(family, spec, c.x_grid, sieve, policy)) {
        if (r.nu) {
          const auto& nu = *r.nu;
          t.rows.push_back({r.x, nu[0], nu[1], nu[2], nu[3], std::string("ok")});
        } else {
          t.rows.push_back({r.x, {}, {}, {}, {}, std::string("empty")});
        }
      }
      break;
    }
    case Command::theorem5: {
      const MultiplesSpec spec(c.a, c.b, c.q);
      t.columns = {"x", "lambda1", "lambda2", "nu11", "reference", "reference_decimal", "distance"};
      for (const Theorem5Row& r : run_theorem5(family, spec, c.x_grid, sieve, policy)) {
        t.rows.push_back({r.x, r.interval.lambda1(), r.interval.lambda2(), r.nu11, to_string(r.reference),
                          to_double(r.reference), r.distance});
      }
      break;
    }
    case Command::enumerate: {
      t.columns = {"m", "n"};
      for (u64 x : c.x_grid) {
        const FareyEnumerator fractions(x, interval_at(family, x), sieve, policy.block_size);
        warn(x, fractions.for_each([&](u64 m, u64 n) { t.rows.push_back({m, n}); }));
      }
      break;
    }
  }
  return t;
}

std::string single_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [cmd, name] : command_table()) {
    if (cmd == c) return name;
  }
  return "?";
}

std::string RunConfig::canonical() const {
  std::string s = command_name(command);
  s += " --A " + join(a) + " --B " + join(b) + " --q " + std::to_string(q);
  s += " --q0 " + std::to_string(q0) + " --q1 " + std::to_string(q1) + " --q2 " + std::to_string(q2);
  s += " --family " + family + " --r " + exponents;
  s += " --x-grid " + join(x_grid) + " --N-grid " + join(n_grid);
  if (sieve_limit) s += " --sieve-limit " + std::to_string(*sieve_limit);
  s += " --threads " + std::to_string(threads);
  s += std::string(" --format ") + (format == OutputFormat::csv ? "csv" : "json");
  return s;
}

RunConfig parse_args(std::span<const std::string> args) {
  CLI::App app{"Densities of sets of rational multiples over Farey-type fraction sets", "multdens"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string a, b, a_gen, q, q0, q1, q2, x, x_grid, n_grid, sieve_limit, threads;
  std::string family = "const:0,1", exponents = "11", format = "csv";
  app.add_option("--A", a, "set A, comma-separated");
  app.add_option("--A-gen", a_gen, "generate A: primes:LO,HI or ranges:LO-HI,...");
  app.add_option("--B", b, "set B, comma-separated");
  app.add_option("--q", q, "modulus q for M(A,B|q)");
  app.add_option("--q0", q0, "q0 of Q_{q0,q1,q2}");
  app.add_option("--q1", q1, "q1 of Q_{q0,q1,q2}");
  app.add_option("--q2", q2, "q2 of Q_{q0,q1,q2}");
  app.add_option("--family", family, "interval family: const:L1,L2 | zeropow:C | shrink:L0,GAMMA");
  app.add_option("--r", exponents, "exponents r1r2: 00, 01, 10 or 11");
  app.add_option("--x", x, "single scale x");
  app.add_option("--x-grid", x_grid, "increasing scales, comma-separated");
  app.add_option("--N-grid", n_grid, "truncation levels N, comma-separated");
  app.add_option("--sieve-limit", sieve_limit, "factor sieve limit override");
  app.add_option("--threads", threads, "worker cap (falls back to MULTDENS_THREADS)");
  app.add_option("--format", format, "csv or json");
  for (const auto& [cmd, name] : command_table()) app.add_subcommand(name, column_help().at(name));

  std::vector<const char*> argv{"multdens"};
  for (const auto& s : args) argv.push_back(s.c_str());
  app.parse(static_cast<int>(argv.size()), argv.data());

  RunConfig c;
  const std::string sub = app.get_subcommands().front()->get_name();
  for (const auto& [cmd, name] : command_table()) {
    if (name == sub) c.command = cmd;
  }
  if (!a.empty() && !a_gen.empty()) throw UsageError("--A and --A-gen are mutually exclusive");
  if (!a.empty()) c.a = normalized(parse_list(a, "--A"));
  if (!a_gen.empty()) {
    c.a = parse_generator(a_gen);
    if (c.a.empty()) throw UsageError("--A-gen: generator '" + a_gen + "' produced an empty set");
  }
  if (!b.empty()) c.b = normalized(parse_list(b, "--B"));
  if (!q.empty()) c.q = parse_positive(q, "--q");
  if (!q0.empty()) c.q0 = parse_positive(q0, "--q0");
  if (!q1.empty()) c.q1 = parse_positive(q1, "--q1");
  if (!q2.empty()) c.q2 = parse_positive(q2, "--q2");

  try {
    c.family = IntervalFamily::parse(family).to_string();
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--family: ") + e.what());
  }
  try {
    c.exponents = SumExponents::parse(exponents).to_string();
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--r: ") + e.what());
  }

  if (!x.empty() && !x_grid.empty()) throw UsageError("--x and --x-grid are mutually exclusive");
  if (!x.empty()) c.x_grid = {parse_positive(x, "--x")};
  if (!x_grid.empty()) c.x_grid = parse_list(x_grid, "--x-grid");
  if (c.x_grid.empty()) c.x_grid = c.command == Command::enumerate ? std::vector<u64>{10} : kDefaultGrid;
  for (std::size_t i = 1; i < c.x_grid.size(); ++i) {
    if (c.x_grid[i] <= c.x_grid[i - 1]) throw UsageError("--x-grid: values must be strictly increasing");
  }
  if (!n_grid.empty()) c.n_grid = parse_list(n_grid, "--N-grid");
  for (std::size_t i = 1; i < c.n_grid.size(); ++i) {
    if (c.n_grid[i] <= c.n_grid[i - 1]) throw UsageError("--N-grid: values must be strictly increasing");
  }
  if (!sieve_limit.empty()) c.sieve_limit = parse_positive(sieve_limit, "--sieve-limit");

  std::string thread_text = threads;
  if (thread_text.empty()) {
    if (const char* env = std::getenv("MULTDENS_THREADS"); env != nullptr && *env != '\0') thread_text = env;
  }
  if (!thread_text.empty() && thread_text != "0") {
    c.threads = static_cast<int>(std::min<u64>(parse_positive(thread_text, "--threads"), 4096));
  }

  if (format == "csv") {
    c.format = OutputFormat::csv;
  } else if (format == "json") {
    c.format = OutputFormat::json;
  } else {
    throw UsageError("--format: expected csv or json, got '" + format + "'");
  }
  return c;
}

u64 resolve_sieve_limit(const RunConfig& c) {
  if (c.sieve_limit) return std::max<u64>(2, *c.sieve_limit);
  const u64 x_max = c.x_grid.empty() ? 1 : c.x_grid.back();
  const double spread = std::ceil(static_cast<double>(x_max) * max_lambda2(IntervalFamily::parse(c.family), c.x_grid));
  u64 limit = std::max<u64>({2, x_max, static_cast<u64>(spread), c.q, c.q0, c.q1, c.q2});
  for (u64 v : c.a) limit = std::max(limit, v);
  for (u64 v : c.b) limit = std::max(limit, v);
  return limit;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto fail = [&](const char* kind, const std::exception& e, int code) {
    err << "error[" << kind << "]: " << single_line(e.what()) << '\n';
    return code;
  };
  try {
    const u64 limit = resolve_sieve_limit(config);
    const FactorSieve sieve(limit);
    const ExecPolicy policy{config.threads, 1024};
    const Table table = run_command(config, sieve, policy, err);
    write_table(table, config, limit, out);
    return kOk;
  } catch (const UsageError& e) {
    return fail("usage", e, kUsage);
  } catch (const UndefinedDensity& e) {
    return fail("empty-farey", e, kEmptyFarey);
  } catch (const CapacityError& e) {
    return fail("capacity", e, kCapacity);
  } catch (const OverflowError& e) {
    return fail("overflow", e, kCapacity);
  } catch (const PreconditionError& e) {
    return fail("precondition", e, kPrecondition);
  } catch (const InvalidArgument& e) {
    return fail("invalid-argument", e, kPrecondition);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const CLI::CallForHelp&) {
    out << "usage: multdens <command> [options]\n\ncommands (CSV columns):\n";
    for (const auto& [cmd, name] : command_table()) out << "  " << name << ": " << column_help().at(name) << '\n';
    out << "\noptions:\n"
           "  --A LIST | --A-gen primes:LO,HI|ranges:LO-HI,...   set A (default 1)\n"
           "  --B LIST                                           set B (default 1)\n"
           "  --q N                                              modulus of M(A,B|q) (default 1)\n"
           "  --q0 N --q1 N --q2 N                               class Q_{q0,q1,q2} (default 1,1,1)\n"
           "  --family const:L1,L2 | zeropow:C | shrink:L0,G     interval family (default const:0,1)\n"
           "  --r 00|01|10|11                                    exponents (default 11)\n"
           "  --x N | --x-grid LIST                              scales (default 10,100,1000,10000,30000)\n"
           "  --N-grid LIST                                      truncation levels (default 2,3,5,10,30,100)\n"
           "  --sieve-limit N                                    factor sieve size override\n"
           "  --threads N                                        worker cap; env MULTDENS_THREADS as fallback\n"
           "  --format csv|json                                  output format (default csv)\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << single_line(e.what()) << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error[usage]: " << single_line(e.what()) << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error[usage]: " << single_line(e.what()) << '\n';
    return kUsage;
  }
  return run(config, out, err);
}

}  // namespace multdens::cli
