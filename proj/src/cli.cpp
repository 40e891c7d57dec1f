#include "symp/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symp/common.hpp"
#include "symp/ffield.hpp"
#include "symp/haar_oracle.hpp"
#include "symp/linstat.hpp"
#include "symp/moments.hpp"
#include "symp/parallel.hpp"
#include "symp/partition.hpp"

namespace symp::cli {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(const BigInt& v) { return v.str(); }
std::string num(const BigRational& v) { return v.str(); }

class TableBuilder {
 public:
  TableBuilder& col(std::string name, bool numeric) {
    t_.columns.push_back(std::move(name));
    t_.numeric.push_back(numeric);
    return *this;
  }
  void row(std::vector<std::string> cells) { t_.rows.push_back(std::move(cells)); }
  Table take() { return std::move(t_); }

 private:
  Table t_;
};

std::vector<Partition> partitions_of(const RunConfig& cfg) {
  if (cfg.partitions.empty()) throw InvalidArgument("--partition: at least one partition is required");
  std::vector<Partition> out;
  for (const auto& text : cfg.partitions) out.push_back(parse_partition(text));
  return out;
}

std::int64_t samples_or(const RunConfig& cfg, std::int64_t fallback) {
  return cfg.samples.value_or(fallback);
}

// Closed-form reference for the oracle and ffcheck rows. Past 4n+1 the value
// is only produced under --explore and flagged as unproven.
std::pair<BigInt, bool> reference_moment(const RunConfig& cfg, int n, const Partition& a) {
  if (size(a) <= moment_usp_max_size(n)) return {moment_usp(n, a), true};
  if (!cfg.explore) return {moment_usp(n, a), true};  // throws OutOfRange
  return {moment_usp_unchecked(n, a), false};
}

}  // namespace

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& msg) { throw InvalidArgument(msg); };
  if (cfg.group != "usp" && cfg.group != "so" && cfg.group != "u") fail("--group: expected usp, so or u");
  if (cfg.n.empty()) fail("--n: at least one value is required");
  for (int n : cfg.n)
    if (n < 1) fail("--n: values must be >= 1");
  if (cfg.mode != "all" && cfg.mode != "prime-square") fail("--mode: expected all or prime-square");
  if (cfg.method != "quadrature" && cfg.method != "mc" && cfg.method != "both")
    fail("--method: expected quadrature, mc or both");
  if (cfg.formula != "auto" && cfg.formula != "nongaussian" && cfg.formula != "gaussian")
    fail("--formula: expected auto, nongaussian or gaussian");
  if (cfg.group != "usp" && cfg.formula == "nongaussian")
    fail("--formula: the non-Gaussian formula is only available for --group usp");
  if (cfg.nodes < 0) fail("--nodes: must be >= 0");
  if (cfg.max_quadrature_n < 1) fail("--max-quadrature-n: must be >= 1");
  if (cfg.samples && *cfg.samples < 0) fail("--samples: must be >= 0");
  if (cfg.threads < 0) fail("--threads: must be >= 0");
  if (cfg.budget < 1) fail("--budget: must be >= 1");
  for (int nu : cfg.nu)
    if (nu < 1) fail("--nu: values must be >= 1");
  for (int m : cfg.m)
    if (m < 0) fail("--m: values must be >= 0");
  if (cfg.format != "csv" && cfg.format != "json") fail("--format: expected csv or json");
  if (cfg.subcommand == "ffcheck") {
    if (cfg.q.empty()) fail("--q: at least one field size is required");
    if (cfg.group != "usp") fail("--group: ffcheck compares against usp only");
  }
  if ((cfg.subcommand == "oracle" || cfg.subcommand == "linstat") && cfg.group != "usp")
    fail("--group: " + cfg.subcommand + " supports usp only");
  if (cfg.subcommand == "oracle" && cfg.method != "quadrature" && samples_or(cfg, 1) < 1)
    fail("--samples: Monte Carlo needs at least one sample");
}

Table run_moment(const RunConfig& cfg) {
  validate(cfg);
  TableBuilder tb;
  tb.col("check", false).col("group", false).col("n", true).col("partition", false).col("size", true);
  tb.col("formula", false).col("value", true).col("valid", false);
  const auto parts = partitions_of(cfg);
  const bool gaussian = cfg.group != "usp" || cfg.formula == "gaussian";
  for (int n : cfg.n) {
    for (const auto& a : parts) {
      BigInt value;
      bool valid = true;
      std::string formula = gaussian ? "gaussian" : "nongaussian";
      if (gaussian) {
        FlaggedMoment fm;
        if (cfg.group == "usp")
          fm = moment_usp_gaussian(n, a);
        else if (cfg.group == "so")
          fm = moment_so_gaussian(n, a);
        else
          fm = moment_u_gaussian(n, a, cfg.conj.empty() ? a : parse_partition(cfg.conj));
        value = fm.value;
        valid = fm.valid;
      } else if (size(a) > moment_usp_max_size(n) && cfg.explore) {
        value = moment_usp_unchecked(n, a);
        valid = false;
      } else {
        value = moment_usp(n, a);
      }
      tb.row({gaussian ? "gaussian-formula" : "moment-formula", cfg.group, num(std::int64_t{n}), format_partition(a),
              num(size(a)), formula, num(value), valid ? "true" : "false"});
    }
  }
  return tb.take();
}

Table run_oracle(const RunConfig& cfg) {
  validate(cfg);
  TableBuilder tb;
  tb.col("check", false).col("n", true).col("partition", false).col("method", false);
  tb.col("estimate", true).col("std_error", true).col("reference", true).col("reference_status", false);
  tb.col("abs_error", true).col("nodes", true).col("samples", true);
  const auto parts = partitions_of(cfg);
  for (int n : cfg.n) {
    for (const auto& a : parts) {
      const auto [ref, proven] = reference_moment(cfg, n, a);
      const double ref_d = ref.convert_to<double>();
      const std::string status = proven ? "proven" : "unproven";
      if (cfg.method != "mc") {
        QuadratureConfig qc;
        qc.nodes_per_dim = cfg.nodes;
        qc.max_n = cfg.max_quadrature_n;
        const int nodes = cfg.nodes > 0 ? cfg.nodes : exact_node_count(n, a);
        const double est = moment_quadrature(n, a, qc);
        tb.row({"quadrature-oracle", num(std::int64_t{n}), format_partition(a), "quadrature", num(est), num(0.0),
                num(ref), status, num(std::fabs(est - ref_d)), num(std::int64_t{nodes}), ""});
      }
      if (cfg.method != "quadrature") {
        MCConfig mc;
        mc.sample_count = samples_or(cfg, 100000);
        mc.rng_seed = cfg.seed;
        const MCEstimate e = moment_mc(n, a, mc);
        tb.row({"mc-oracle", num(std::int64_t{n}), format_partition(a), "mc", num(e.estimate), num(e.std_error),
                num(ref), status, num(std::fabs(e.estimate - ref_d)), "", num(mc.sample_count)});
      }
    }
  }
  return tb.take();
}

Table run_ffcheck(const RunConfig& cfg) {
  validate(cfg);
  TableBuilder tb;
  tb.col("check", false).col("q", true).col("n", true).col("partition", false).col("mode", false);
  tb.col("empirical", true).col("reference", true).col("abs_error", true).col("envelope", true);
  tb.col("scaled_error", true);
  const auto parts = partitions_of(cfg);
  const ff::QMode mode = cfg.mode == "all" ? ff::QMode::AllPrimePowers : ff::QMode::PrimeOrPrimeSquare;
  for (int n : cfg.n) {
    for (const auto& a : parts) {
      const BigInt ref = moment_usp(n, a);
      const double ref_d = ref.convert_to<double>();
      for (std::uint32_t q : cfg.q) {
        const ff::PrimeField field(q);
        const double emp = ff::empirical_moment(field, n, a, mode, cfg.budget);
        const double err = std::fabs(emp - ref_d);
        tb.row({"character-sum-moment", num(std::int64_t{q}), num(std::int64_t{n}), format_partition(a), cfg.mode,
                num(emp), num(ref), num(err), num(1.0 / std::sqrt(static_cast<double>(q))),
                num(err * std::sqrt(static_cast<double>(q)))});
      }
    }
  }
  return tb.take();
}

Table run_linstat(const RunConfig& cfg) {
  validate(cfg);
  TableBuilder tb;
  tb.col("check", false).col("n", true).col("nu", true).col("m", true).col("f", false);
  tb.col("exact", true).col("exact_value", true).col("prediction", true);
  tb.col("mc_estimate", true).col("mc_std_error", true).col("samples", true);
  const FourierTestFn f = parse_fourier(cfg.f);
  const std::int64_t samples = samples_or(cfg, 0);
  for (int n : cfg.n) {
    const std::vector<int> nus = cfg.nu.empty() ? std::vector<int>{n} : cfg.nu;
    for (int nu : nus) {
      for (int m : cfg.m) {
        const BigRational exact = w_moment_exact(n, nu, m, f);
        const double pred = w_moment_gaussian_prediction(n, nu, m, f);
        std::vector<std::string> row{"linear-statistic", num(std::int64_t{n}), num(std::int64_t{nu}),
                                     num(std::int64_t{m}), format_fourier(f), num(exact),
                                     num(exact.convert_to<double>()), num(pred)};
        if (samples > 0) {
          MCConfig mc;
          mc.sample_count = samples;
          mc.rng_seed = cfg.seed;
          const MCEstimate e = w_moment_mc(n, nu, m, f, mc);
          row.insert(row.end(), {num(e.estimate), num(e.std_error), num(samples)});
        } else {
          row.insert(row.end(), {"", "", "0"});
        }
        tb.row(std::move(row));
      }
    }
  }
  return tb.take();
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json json_cell(const std::string& s, bool numeric) {
  if (!numeric) return s;
  if (s.empty()) return nullptr;
  std::int64_t i = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (ec == std::errc() && p == s.data() + s.size()) return i;
  double d = 0.0;
  auto [pd, ecd] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ecd == std::errc() && pd == s.data() + s.size() && std::isfinite(d)) return d;
  return s;  // big integers, fractions, non-finite values
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < r.size(); ++i) obj[t.columns[i]] = json_cell(r[i], t.numeric[i]);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Trace moments of random symplectic matrices and their function-field counterparts"};
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "Matrix group: usp, so or u");
    sub->add_option("--n", cfg.n, "Matrix rank parameter(s)")->delimiter(',');
    sub->add_option("--partition", cfg.partitions, "Partition such as \"1^2 3^1\" (repeatable)");
    sub->add_option("--seed", cfg.seed, "Monte Carlo seed");
    sub->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = runtime default)")->envname("SYMP_THREADS");
    sub->add_option("--format", cfg.format, "Output format: csv or json");
    sub->add_option("--out", cfg.out, "Write output to this file instead of stdout");
    sub->add_flag("--explore", cfg.explore, "Allow sizes past 4n+1, flagging values as unproven");
  };

  auto* moment = app.add_subcommand("moment", "Closed-form trace moments");
  common(moment);
  moment->add_option("--formula", cfg.formula, "auto, nongaussian or gaussian");
  moment->add_option("--conj", cfg.conj, "Partition of conjugate traces (group u)");

  auto* oracle = app.add_subcommand("oracle", "Compare closed forms with quadrature or Monte Carlo");
  common(oracle);
  oracle->add_option("--method", cfg.method, "quadrature, mc or both");
  oracle->add_option("--nodes", cfg.nodes, "Quadrature nodes per angle (0 = exact count)");
  oracle->add_option("--max-quadrature-n", cfg.max_quadrature_n, "Largest n quadrature will attempt");

  auto* ffcheck = app.add_subcommand("ffcheck", "Character-sum moments over F_q[x]");
  common(ffcheck);
  ffcheck->add_option("--q", cfg.q, "Odd prime field size(s)")->delimiter(',');
  ffcheck->add_option("--mode", cfg.mode, "all or prime-square");
  ffcheck->add_option("--budget", cfg.budget, "Cap on polynomials enumerated per sweep");

  auto* linstat = app.add_subcommand("linstat", "Moments of narrow-band linear statistics");
  common(linstat);
  linstat->add_option("--nu", cfg.nu, "Frequency shift(s); defaults to n")->delimiter(',');
  linstat->add_option("--m", cfg.m, "Moment order(s)")->delimiter(',');
  linstat->add_option("--f", cfg.f, "Fourier table such as \"0:1 1:1/2\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    validate(cfg);
    set_thread_count(cfg.threads);
    Table table;
    if (cfg.subcommand == "moment")
      table = run_moment(cfg);
    else if (cfg.subcommand == "oracle")
      table = run_oracle(cfg);
    else if (cfg.subcommand == "ffcheck")
      table = run_ffcheck(cfg);
    else
      table = run_linstat(cfg);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) throw InvalidArgument("--out: cannot open " + cfg.out);
      sink = &file;
    }
    if (cfg.format == "json")
      write_json(table, *sink);
    else
      write_csv(table, *sink);
    return kOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const OutOfRange& e) {
    err << "out of range: " << e.what() << '\n';
    return kOutOfRange;
  } catch (const PreconditionViolated& e) {
    err << "out of range: " << e.what() << '\n';
    return kOutOfRange;
  } catch (const BudgetExceeded& e) {
    err << "budget: " << e.what() << '\n';
    return kBudget;
  } catch (const CostGuard& e) {
    err << "budget: " << e.what() << '\n';
    return kBudget;
  } catch (const CapExceeded& e) {
    err << "budget: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace symp::cli
