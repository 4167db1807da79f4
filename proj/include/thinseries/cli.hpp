#ifndef THINSERIES_CLI_HPP
#define THINSERIES_CLI_HPP

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thinseries/analysis.hpp"
#include "thinseries/error.hpp"
#include "thinseries/format.hpp"
#include "thinseries/involution.hpp"
#include "thinseries/run_theorem.hpp"
#include "thinseries/series.hpp"
#include "thinseries/spec_json.hpp"
#include "thinseries/verify.hpp"
#include "thinseries/weights.hpp"

namespace thinseries::cli {

namespace detail {

struct SpecSource {
  std::string inline_json;
  std::string file_path;

  ThinnedSpec resolve() const {
    if (!inline_json.empty() && !file_path.empty())
      throw Error("invalid_argument",
                  "give exactly one of --spec and --spec-file");
    if (!inline_json.empty()) return parse_spec(inline_json);
    if (!file_path.empty()) return load_spec_file(file_path);
    throw Error("invalid_argument", "a spec is required "
                                    "(--spec or --spec-file)");
  }
};

inline void add_spec_options(CLI::App* cmd, SpecSource& src) {
  cmd->add_option("--spec", src.inline_json, "inline JSON spec document");
  cmd->add_option("--spec-file", src.file_path, "path to a JSON spec document");
}

inline int default_workers() {
  if (const char* env = std::getenv("THINSERIES_WORKERS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

inline Rat parse_rational(const std::string& text) {
  try {
    Rat q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error("invalid_argument", "cannot parse rational: " + text);
  }
}

inline nlohmann::json error_json(const std::string& code,
                                 const std::string& message) {
  return nlohmann::json{{"error", {{"code", code}, {"message", message}}}};
}

} // namespace detail

// Runs the command line given by `args` (program name excluded).  Exit
// status: 0 success; 1 domain error (machine-readable object on `err`);
// 2 verification failure.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"exact reciprocals of thinned exponential series"};
  app.require_subcommand(1);

  std::string format = "text";
  int workers = detail::default_workers();
  app.add_option("--workers", workers, "worker thread bound")
      ->check(CLI::PositiveNumber);

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv", "bfile"}));
  };

  // ---- coeffs ----
  auto* coeffs_cmd = app.add_subcommand(
      "coeffs", "reciprocal e.g.f. coefficients c_0..c_N");
  detail::SpecSource coeffs_spec;
  detail::add_spec_options(coeffs_cmd, coeffs_spec);
  long coeffs_n = 0;
  coeffs_cmd->add_option("--N", coeffs_n, "last index")->required();
  add_format(coeffs_cmd);

  // ---- signed-count ----
  auto* signed_cmd = app.add_subcommand(
      "signed-count", "|P^pos| and |P^neg| by exhaustive enumeration");
  detail::SpecSource signed_spec;
  detail::add_spec_options(signed_cmd, signed_spec);
  int signed_n = 0;
  signed_cmd->add_option("--n", signed_n, "ground set size")->required();
  add_format(signed_cmd);

  // ---- involute ----
  auto* involute_cmd =
      app.add_subcommand("involute", "apply the involution to one partition");
  detail::SpecSource involute_spec;
  detail::add_spec_options(involute_cmd, involute_spec);
  std::string partition_text;
  involute_cmd->add_option("--partition", partition_text,
                           "slash-separated blocks, e.g. 234/6/1/57/89")
      ->required();
  add_format(involute_cmd);

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand(
      "verify", "exhaustive involution property suite up to n");
  detail::SpecSource verify_spec;
  detail::add_spec_options(verify_cmd, verify_spec);
  int verify_n = 7;
  verify_cmd->add_option("--n", verify_n, "largest ground set size");

  // ---- fixed-points ----
  auto* fixed_cmd = app.add_subcommand(
      "fixed-points", "count involution fixed points and compare with c_n");
  detail::SpecSource fixed_spec;
  detail::add_spec_options(fixed_cmd, fixed_spec);
  int fixed_n = 0;
  fixed_cmd->add_option("--n", fixed_n, "ground set size")->required();
  add_format(fixed_cmd);

  // ---- weights ----
  auto* weights_cmd =
      app.add_subcommand("weights", "run-length weight table w_0..w_L");
  detail::SpecSource weights_spec;
  detail::add_spec_options(weights_cmd, weights_spec);
  long weights_l = 0;
  weights_cmd->add_option("--L", weights_l, "largest run length")->required();
  add_format(weights_cmd);

  // ---- run-theorem ----
  auto* runthm_cmd = app.add_subcommand(
      "run-theorem", "o.g.f. weights w_n and the b_n / c_n agreement report");
  detail::SpecSource runthm_spec;
  detail::add_spec_options(runthm_cmd, runthm_spec);
  long runthm_n = 0;
  runthm_cmd->add_option("--N", runthm_n, "last index")->required();
  add_format(runthm_cmd);

  // ---- scan ----
  auto* scan_cmd = app.add_subcommand(
      "scan", "non-negativity scan of the reduced family");
  long scan_m = 0, scan_m_min = 1, scan_m_max = 0, scan_n_max = 0;
  bool scan_extended = false;
  std::string checkpoint_path;
  scan_cmd->add_option("--m", scan_m, "scan a single m");
  scan_cmd->add_option("--m-min", scan_m_min, "first m of a range");
  scan_cmd->add_option("--m-max", scan_m_max, "last m of a range");
  scan_cmd->add_option("--n-max", scan_n_max, "coefficients per spec");
  scan_cmd->add_flag("--extended", scan_extended,
                     "long-running envelope (m <= 250, n <= 2500)");
  scan_cmd->add_option("--checkpoint", checkpoint_path,
                       "JSONL checkpoint file (resumes completed m)");
  add_format(scan_cmd);

  // ---- necessary ----
  auto* necessary_cmd = app.add_subcommand(
      "necessary", "closed-form check of c_{2m+2} for A u B = [2m]");
  long necessary_m = 0;
  bool with_tail = false;
  necessary_cmd->add_option("--m", necessary_m, "family index")->required();
  necessary_cmd->add_flag("--with-tail", with_tail,
                          "adjoin the even tail {2m+2, 2m+4, ...}");
  add_format(necessary_cmd);

  // ---- certify ----
  auto* certify_cmd = app.add_subcommand(
      "certify", "finite-prefix certificate for the m-family");
  int certify_m = 1;
  std::string certify_a = "1/2";
  long certify_n = 200;
  certify_cmd->add_option("--m", certify_m, "family index")->required();
  certify_cmd->add_option("--a", certify_a, "rate, e.g. 1/2");
  certify_cmd->add_option("--N", certify_n, "prefix length");
  add_format(certify_cmd);

  // ---- witness ----
  auto* witness_cmd = app.add_subcommand(
      "witness", "signed tally of the method-limitation example");
  add_format(witness_cmd);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << detail::error_json("usage", e.what()).dump() << "\n";
    return 1;
  }

  try {
    if (*coeffs_cmd) {
      ThinnedSpec spec = coeffs_spec.resolve();
      CoeffSeq c = egf_reciprocal_coeffs(spec, coeffs_n);
      if (format == "bfile")
        out << to_bfile(c.values);
      else if (format == "csv")
        out << to_csv(c.values, "n,c_n");
      else if (format == "json")
        out << to_json_array(c.values).dump() << "\n";
      else
        for (long n = 0; n <= coeffs_n; ++n)
          out << "c_" << n << " = " << to_decimal(c[n]) << "\n";
      return 0;
    }

    if (*signed_cmd) {
      ThinnedSpec spec = signed_spec.resolve();
      SignedCount sc = signed_count(signed_n, spec, workers);
      if (format == "json") {
        nlohmann::json j{{"n", signed_n},
                         {"pos", to_decimal(sc.pos)},
                         {"neg", to_decimal(sc.neg)},
                         {"difference", to_decimal(sc.difference())}};
        out << j.dump() << "\n";
      } else {
        out << "pos = " << to_decimal(sc.pos) << "\n"
            << "neg = " << to_decimal(sc.neg) << "\n"
            << "pos - neg = " << to_decimal(sc.difference()) << "\n";
      }
      return 0;
    }

    if (*involute_cmd) {
      ThinnedSpec spec = involute_spec.resolve();
      OrderedSetPartition p = parse_partition(partition_text);
      InvolutionTrace trace = involute(p, spec);
      if (format == "json") {
        nlohmann::json steps = nlohmann::json::array();
        for (const InvolutionStep& s : trace.steps)
          steps.push_back({{"case", to_string(s.step_case)},
                           {"block", s.block_index}});
        nlohmann::json j{{"input", partition_to_string(trace.input)},
                         {"output", partition_to_string(trace.output)},
                         {"fixed", trace.fixed()},
                         {"steps", steps}};
        out << j.dump() << "\n";
      } else {
        out << "input:  " << partition_to_string(trace.input) << "\n";
        for (const InvolutionStep& s : trace.steps)
          out << "case=" << to_string(s.step_case) << " at block "
              << s.block_index << "\n";
        out << "output: " << partition_to_string(trace.output) << "\n";
        out << (trace.fixed() ? "fixed point\n" : "moved\n");
      }
      return 0;
    }

    if (*verify_cmd) {
      ThinnedSpec spec = verify_spec.resolve();
      SuiteResult r = run_involution_suite(spec, verify_n);
      out << "checked " << r.partitions_checked << " partitions up to n = "
          << verify_n << "\n";
      if (r.ok) {
        out << "all involution properties hold\n";
        return 0;
      }
      for (const SuiteViolation& v : r.violations)
        out << "violation [" << v.property << "] at n = " << v.n << ": "
            << v.detail << "\n";
      err << detail::error_json("verification_failed",
                                "involution property suite failed")
                 .dump()
          << "\n";
      return 2;
    }

    if (*fixed_cmd) {
      ThinnedSpec spec = fixed_spec.resolve();
      Int fixed = fixed_point_count(fixed_n, spec);
      CoeffSeq c = egf_reciprocal_coeffs(spec, fixed_n);
      const bool comparable =
          is_odd_ended(spec, fixed_n + spec.r() * spec.b()) && spec.b_in_A();
      if (format == "json") {
        nlohmann::json j{{"n", fixed_n},
                         {"fixed_points", to_decimal(fixed)},
                         {"c_n", to_decimal(c[fixed_n])},
                         {"comparable", comparable}};
        out << j.dump() << "\n";
      } else {
        out << "fixed points = " << to_decimal(fixed) << "\n";
        out << "c_n          = " << to_decimal(c[fixed_n]) << "\n";
      }
      if (comparable && fixed != c[fixed_n]) {
        err << detail::error_json("verification_failed",
                                  "fixed-point count differs from c_n")
                   .dump()
            << "\n";
        return 2;
      }
      return 0;
    }

    if (*weights_cmd) {
      ThinnedSpec spec = weights_spec.resolve();
      WeightTable table = make_weight_table(spec, weights_l);
      if (format == "csv")
        out << to_csv(table.w, "ℓ,w_ℓ");
      else if (format == "json")
        out << to_json_array(table.w).dump() << "\n";
      else
        for (long ell = 0; ell <= weights_l; ++ell)
          out << "w_" << ell << " = " << to_decimal(table.w[ell]) << "\n";
      return 0;
    }

    if (*runthm_cmd) {
      ThinnedSpec spec = runthm_spec.resolve();
      RunTheoremResult r = run_theorem_coeffs(spec, runthm_n);
      CoeffSeq c = egf_reciprocal_coeffs(spec, runthm_n);
      nlohmann::json j{{"w", to_json_array(r.w.values)},
                       {"b", to_json_array(r.b.values)},
                       {"c", to_json_array(c.values)},
                       {"b_equals_c", r.b.values == c.values},
                       {"w_all_nonneg", r.w_all_nonneg}};
      if (r.first_negative_w)
        j["first_negative_w"] = *r.first_negative_w;
      else
        j["first_negative_w"] = nullptr;
      if (format == "text") {
        out << "w: ";
        for (const Int& v : r.w.values) out << to_decimal(v) << " ";
        out << "\nb_equals_c: " << (r.b.values == c.values ? "yes" : "no")
            << "\nw_all_nonneg: " << (r.w_all_nonneg ? "yes" : "no") << "\n";
      } else {
        out << j.dump() << "\n";
      }
      return r.b.values == c.values ? 0 : 2;
    }

    if (*scan_cmd) {
      ScanOptions opts;
      if (scan_extended) {
        opts.m_max = 250;
        opts.n_max = 2500;
      }
      if (scan_m > 0) {
        opts.m_min = scan_m;
        opts.m_max = scan_m;
      } else {
        opts.m_min = scan_m_min;
        if (scan_m_max > 0) opts.m_max = scan_m_max;
      }
      if (scan_n_max > 0) opts.n_max = scan_n_max;
      opts.workers = workers;
      opts.checkpoint_path = checkpoint_path;
      std::vector<ScanReport> reports =
          scan_family(opts, format == "text" ? &out : nullptr);
      if (format == "csv" || format == "bfile") {
        out << "m,n_max,first_negative_n,first_negative_value\n";
        for (const ScanReport& r : reports) {
          out << r.m << ',' << r.n_max << ',';
          if (r.first_negative)
            out << r.first_negative->first << ','
                << to_decimal(r.first_negative->second);
          else
            out << ',';
          out << '\n';
        }
      } else if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const ScanReport& r : reports) arr.push_back(scan_report_to_json(r));
        out << arr.dump() << "\n";
      } else {
        long negatives = 0;
        for (const ScanReport& r : reports)
          if (r.first_negative) ++negatives;
        out << "scanned m = " << opts.m_min << ".." << opts.m_max
            << ", n <= " << opts.n_max << ": "
            << (negatives == 0 ? "no negative coefficients"
                               : std::to_string(negatives) +
                                     " spec(s) with negatives")
            << "\n";
      }
      for (const ScanReport& r : reports)
        if (r.first_negative) return 2;
      return 0;
    }

    if (*necessary_cmd) {
      Int value = necessary_check(necessary_m, with_tail);
      if (format == "json") {
        nlohmann::json j{{"m", necessary_m},
                         {"with_tail", with_tail},
                         {"c", to_decimal(value)}};
        out << j.dump() << "\n";
      } else {
        out << "c_" << (2 * necessary_m + 2) << " = " << to_decimal(value)
            << " (matches the closed form)\n";
      }
      return 0;
    }

    if (*certify_cmd) {
      Rat a = detail::parse_rational(certify_a);
      CertificateReport rep = certify(certify_m, a, certify_n);
      if (format == "json") {
        nlohmann::json j{{"m", rep.m},
                         {"a", to_decimal(rep.a)},
                         {"N", rep.N},
                         {"all_nonneg", rep.all_nonneg}};
        if (rep.first_violation_degree)
          j["first_violation_degree"] = *rep.first_violation_degree;
        else
          j["first_violation_degree"] = nullptr;
        out << j.dump() << "\n";
      } else {
        out << "m = " << rep.m << ", a = " << to_decimal(rep.a)
            << ", N = " << rep.N << ": "
            << (rep.all_nonneg ? "certificate holds"
                               : "violated at degree " +
                                     std::to_string(*rep.first_violation_degree))
            << "\n";
      }
      return 0;
    }

    if (*witness_cmd) {
      Int tally = limitation_witness();
      out << to_decimal(tally) << "\n";
      return 0;
    }
  } catch (const thinseries::Error& e) {
    err << detail::error_json(e.code(), e.what()).dump() << "\n";
    return e.code() == "regression" ? 2 : 1;
  }
  return 0;
}

} // namespace thinseries::cli

#endif
