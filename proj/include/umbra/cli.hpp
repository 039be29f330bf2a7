#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "umbra/dsl.hpp"
#include "umbra/identities.hpp"
#include "umbra/sequences.hpp"

namespace umbra::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 = success, 1 = at least one identity check failed,
// 2 = usage / parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::map<std::string, std::vector<Rat>> parse_params(
    const std::vector<std::string>& raw) {
  std::map<std::string, std::vector<Rat>> out;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--param expects name=p/q, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const auto value = rat_parse(item.substr(eq + 1));
    if (!value)
      throw UsageError("--param " + name + ": '" + item.substr(eq + 1) +
                       "' is not an exact rational (decimals are rejected)");
    out[name].push_back(*value);
  }
  return out;
}

inline ParamMap single_valued(const std::map<std::string, std::vector<Rat>>& params) {
  ParamMap out;
  for (const auto& [name, values] : params) {
    if (values.size() != 1)
      throw UsageError("parameter '" + name + "' given more than once");
    out[name] = values.front();
  }
  return out;
}

inline std::vector<std::string> poly_coeff_strings(const RatPoly& p, std::size_t min_len = 0) {
  std::vector<std::string> out;
  const int deg = p.degree();
  for (int m = 0; m <= deg; ++m) out.push_back(rat_str(p.coeff(static_cast<std::size_t>(m))));
  while (out.size() < min_len) out.emplace_back("0");
  if (out.empty()) out.emplace_back("0");  // render the zero polynomial as [0]
  return out;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

inline Json value_json(const Value& v) {
  if (std::holds_alternative<Rat>(v)) return rat_str(std::get<Rat>(v));
  return poly_coeff_strings(std::get<RatPoly>(v));
}

// Compact single-line rendering: "p/q" or "[c0, c1, ...]".
inline std::string value_text(const Value& v) { return value_str(v); }

// CSV cell: coefficient lists joined by ';' so no quoting is needed.
inline std::string value_csv(const Value& v) {
  if (std::holds_alternative<Rat>(v)) return rat_str(std::get<Rat>(v));
  return join(poly_coeff_strings(std::get<RatPoly>(v)), ";");
}

inline std::string params_text(const ParamMap& params) {
  std::string s;
  for (const auto& [name, value] : params) s += " " + name + "=" + rat_str(value);
  return s;
}

inline Json params_json(const ParamMap& params) {
  Json j = Json::object();
  for (const auto& [name, value] : params) j[name] = rat_str(value);
  return j;
}

struct OutputTarget {
  std::ostream& fallback;
  std::string path;

  template <typename Fn>
  void write(Fn&& fn) const {
    if (path.empty()) {
      fn(fallback);
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    fn(file);
  }
};

// The family DSL strings shown in pair headers; parameters stay symbolic.
inline std::string family_f_string(Family f) {
  switch (f) {
    case Family::Falling: return "exp(t)-1";
    case Family::ScaledFalling: return "exp(b*t)-1";
    case Family::Monomial: return "t";
    case Family::Abel: return "t*exp(a*t)";
    case Family::Bell: return "log1p(t)";
    case Family::MittagLeffler: return "(exp(t)-1)/(exp(t)+1)";
    case Family::LaguerreNeg: return "t/(t+1)";
    case Family::PowerAssoc: return "t*(1+t)^a";
    case Family::SStar: return "t*(exp(t)+1)/2";
    case Family::Bernoulli:
    case Family::Euler: return "t";  // Appell: the delta series is t
  }
  return "?";
}

inline std::string family_g_string(Family f, const std::string& order) {
  if (f == Family::Bernoulli) return "((exp(t)-1)/t)^" + order;
  if (f == Family::Euler) return "((exp(t)+1)/2)^" + order;
  return "1";
}

// ---------------------------------------------------------------------------
// seq
// ---------------------------------------------------------------------------

struct SeqOptions {
  std::string family;
  int n_max = 8;
  long long trunc = -1;  // -1: default 2*n_max + 2
  std::vector<std::string> raw_params;
  std::string format = "text";
  std::string out_path;
};

inline int cmd_seq(const SeqOptions& opt, std::ostream& out, std::ostream& err) {
  const auto fam = family_from_name(opt.family);
  if (!fam) throw UsageError("unknown family '" + opt.family + "' (see 'umbra list')");
  const ParamMap params = single_valued(parse_params(opt.raw_params));

  // the displayed delta series needs at least n_max coefficients of data
  std::size_t trunc = opt.trunc < 0 ? static_cast<std::size_t>(2 * opt.n_max + 2)
                                    : static_cast<std::size_t>(opt.trunc);
  const auto trunc_floor = static_cast<std::size_t>(std::max(opt.n_max, 1));
  if (trunc < trunc_floor) {
    err << "warning: --trunc raised to " << trunc_floor << " (needs >= n_max)\n";
    trunc = trunc_floor;
  }

  FamilyId id{*fam, Rat(0)};
  if (family_has_param(*fam)) {
    const std::string pname = family_param_name(*fam);
    auto it = params.find(pname);
    if (it == params.end())
      throw UsageError("family '" + opt.family + "' needs --param " + pname + "=p/q");
    id.param = it->second;
  }

  std::vector<RatPoly> rows;
  for (int n = 0; n <= opt.n_max; ++n) rows.push_back(family_poly(id, static_cast<std::size_t>(n)));

  const std::string pname = family_param_name(*fam);
  const std::string order =
      id.family == Family::Bernoulli || id.family == Family::Euler ? rat_str(id.param) : "r";
  const std::string g_str = family_g_string(*fam, order);
  const std::string f_str = family_f_string(*fam);
  std::vector<std::string> f_coeffs;
  if (family_is_associated(*fam)) {
    const auto [g, f] = family_pair(id, trunc);
    for (std::size_t k = 0; k <= f.trunc(); ++k) f_coeffs.push_back(rat_str(f.coeff(k)));
  }

  OutputTarget target{out, opt.out_path};
  if (opt.format == "text") {
    target.write([&](std::ostream& os) {
      os << "family: " << opt.family << "\n";
      os << "pair: (" << g_str << ", " << f_str << ")";
      if (!pname.empty() && family_is_associated(*fam))
        os << " with " << pname << "=" << rat_str(id.param);
      os << "\n";
      if (!f_coeffs.empty()) os << "f: [" << join(f_coeffs, ", ") << "]\n";
      for (int n = 0; n <= opt.n_max; ++n)
        os << "n=" << n << ": [" << join(poly_coeff_strings(rows[static_cast<std::size_t>(n)]), ", ")
           << "]\n";
    });
  } else if (opt.format == "json") {
    Json doc;
    doc["tool_version"] = kToolVersion;
    doc["command"] = "seq";
    doc["config"] = {{"family", opt.family},
                     {"n_max", opt.n_max},
                     {"trunc", trunc},
                     {"params", params_json(params)},
                     {"pair_g", g_str},
                     {"pair_f", f_str},
                     {"f_coeffs", f_coeffs}};
    Json results = Json::array();
    for (int n = 0; n <= opt.n_max; ++n)
      results.push_back({{"n", n}, {"coeffs", poly_coeff_strings(rows[static_cast<std::size_t>(n)])}});
    doc["results"] = std::move(results);
    target.write([&](std::ostream& os) { os << doc.dump(2) << "\n"; });
  } else if (opt.format == "csv") {
    target.write([&](std::ostream& os) {
      os << "n";
      for (int m = 0; m <= opt.n_max; ++m) os << ",coeff" << m;
      os << "\n";
      for (int n = 0; n <= opt.n_max; ++n) {
        const auto cells = poly_coeff_strings(rows[static_cast<std::size_t>(n)],
                                              static_cast<std::size_t>(opt.n_max) + 1);
        os << n << "," << join(cells, ",") << "\n";
      }
    });
  } else {
    throw UsageError("unknown format '" + opt.format + "'");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::vector<std::string> ids;  // empty or {"all"} = everything
  std::string variant = "both";
  int n_max = 8;
  std::vector<std::string> raw_params;
  std::string format = "text";
  std::string out_path;
};

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  VariantFilter filter;
  if (opt.variant == "as-stated")
    filter = VariantFilter::AsStated;
  else if (opt.variant == "derivation")
    filter = VariantFilter::Derivation;
  else if (opt.variant == "both")
    filter = VariantFilter::Both;
  else
    throw UsageError("--variant must be as-stated, derivation, or both");

  std::vector<std::string> ids = opt.ids;
  if (ids.size() == 1 && ids.front() == "all") ids.clear();
  for (const auto& id : ids) {
    bool known = false;
    for (const auto& info : identity_registry()) known = known || info.id == id;
    if (!known) throw UsageError("unknown identity '" + id + "' (see 'umbra list')");
  }

  auto sweep = default_param_sweep();
  for (const auto& [name, values] : parse_params(opt.raw_params)) sweep[name] = values;

  std::vector<IdentityReport> reports;
  try {
    reports = verify_all(opt.n_max, filter, sweep, ids);
  } catch (const BadParams& e) {
    throw UsageError(e.what());
  }

  std::size_t pass = 0, fail = 0, errors = 0;
  for (const auto& r : reports)
    for (const auto& o : r.outcomes) {
      if (o.status == CheckStatus::Pass) ++pass;
      else if (o.status == CheckStatus::Fail) ++fail;
      else ++errors;
    }

  OutputTarget target{out, opt.out_path};
  if (opt.format == "text") {
    target.write([&](std::ostream& os) {
      for (const auto& r : reports)
        for (const auto& o : r.outcomes) {
          os << r.id << " [" << r.variant << "]" << params_text(r.params) << " n=" << o.n << " ";
          if (o.status == CheckStatus::Pass) {
            os << "PASS\n";
          } else if (o.status == CheckStatus::Error) {
            os << "FAILED-TO-EVALUATE: " << o.error << "\n";
          } else {
            os << "FAIL\n";
            for (const auto& f : o.failures) {
              if (!f.label.empty()) os << "  case " << f.label << ":\n";
              os << "  lhs  = " << value_text(f.lhs) << "\n";
              os << "  rhs  = " << value_text(f.rhs) << "\n";
              os << "  diff = " << value_text(f.diff) << "\n";
            }
          }
        }
      os << "checks: " << (pass + fail + errors) << " total, " << pass << " pass, " << fail
         << " fail, " << errors << " error\n";
    });
  } else if (opt.format == "json") {
    Json doc;
    doc["tool_version"] = kToolVersion;
    doc["command"] = "verify";
    Json sweep_json = Json::object();
    for (const auto& [name, values] : sweep) {
      Json arr = Json::array();
      for (const auto& v : values) arr.push_back(rat_str(v));
      sweep_json[name] = std::move(arr);
    }
    doc["config"] = {{"ids", ids.empty() ? Json::array({"all"}) : Json(ids)},
                     {"variant", opt.variant},
                     {"n_max", opt.n_max},
                     {"params", std::move(sweep_json)}};
    Json results = Json::array();
    for (const auto& r : reports)
      for (const auto& o : r.outcomes) {
        Json row = {{"id", r.id},
                    {"variant", r.variant},
                    {"params", params_json(r.params)},
                    {"n", o.n},
                    {"status", o.status == CheckStatus::Pass   ? "PASS"
                               : o.status == CheckStatus::Fail ? "FAIL"
                                                               : "ERROR"}};
        if (o.status == CheckStatus::Error) row["error"] = o.error;
        if (!o.failures.empty()) {
          const auto& f = o.failures.front();
          if (!f.label.empty()) row["case"] = f.label;
          row["lhs"] = value_json(f.lhs);
          row["rhs"] = value_json(f.rhs);
          row["diff"] = value_json(f.diff);
          row["failure_count"] = o.failures.size();
        }
        results.push_back(std::move(row));
      }
    doc["results"] = std::move(results);
    target.write([&](std::ostream& os) { os << doc.dump(2) << "\n"; });
  } else if (opt.format == "csv") {
    target.write([&](std::ostream& os) {
      os << "id,variant,params,n,status,case,lhs,rhs,diff\n";
      for (const auto& r : reports)
        for (const auto& o : r.outcomes) {
          std::string params;
          for (const auto& [name, value] : r.params)
            params += (params.empty() ? "" : ";") + name + "=" + rat_str(value);
          os << r.id << "," << r.variant << "," << params << "," << o.n << ","
             << (o.status == CheckStatus::Pass   ? "PASS"
                 : o.status == CheckStatus::Fail ? "FAIL"
                                                 : "ERROR");
          if (!o.failures.empty()) {
            const auto& f = o.failures.front();
            os << "," << f.label << "," << value_csv(f.lhs) << "," << value_csv(f.rhs) << ","
               << value_csv(f.diff);
          } else {
            os << ",,,,";
          }
          os << "\n";
        }
    });
  } else {
    throw UsageError("unknown format '" + opt.format + "'");
  }
  return fail + errors == 0 ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// series
// ---------------------------------------------------------------------------

struct SeriesOptions {
  std::string text;
  int trunc = 18;  // 2 * default n_max + 2
  std::vector<std::string> raw_params;
  std::string format = "text";
  std::string out_path;
};

inline int cmd_series(const SeriesOptions& opt, std::ostream& out, std::ostream& err) {
  const ParamMap params = single_valued(parse_params(opt.raw_params));
  dsl::ExprPtr expr;
  RatSeries series = RatSeries::zero(0);
  try {
    expr = dsl::parse(opt.text);
    std::map<std::string, Rat> bindings(params.begin(), params.end());
    series = dsl::evaluate(expr, bindings, static_cast<std::size_t>(opt.trunc));
  } catch (const ParseError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "evaluation error: " << e.what() << "\n";
    return kExitUsage;
  }

  OutputTarget target{out, opt.out_path};
  if (opt.format == "text") {
    target.write([&](std::ostream& os) {
      os << "series: " << dsl::print(expr) << "\n";
      os << "k\tc_k\ta_k\n";
      for (std::size_t k = 0; k <= series.trunc(); ++k)
        os << k << "\t" << rat_str(series.coeff(k)) << "\t" << rat_str(series.umbral_coeff(k))
           << "\n";
    });
  } else if (opt.format == "json") {
    Json doc;
    doc["tool_version"] = kToolVersion;
    doc["command"] = "series";
    doc["config"] = {{"expr", opt.text},
                     {"canonical", dsl::print(expr)},
                     {"trunc", opt.trunc},
                     {"params", params_json(params)}};
    Json results = Json::array();
    for (std::size_t k = 0; k <= series.trunc(); ++k)
      results.push_back({{"k", k},
                         {"c", rat_str(series.coeff(k))},
                         {"a", rat_str(series.umbral_coeff(k))}});
    doc["results"] = std::move(results);
    target.write([&](std::ostream& os) { os << doc.dump(2) << "\n"; });
  } else if (opt.format == "csv") {
    target.write([&](std::ostream& os) {
      os << "k,c,a\n";
      for (std::size_t k = 0; k <= series.trunc(); ++k)
        os << k << "," << rat_str(series.coeff(k)) << "," << rat_str(series.umbral_coeff(k))
           << "\n";
    });
  } else {
    throw UsageError("unknown format '" + opt.format + "'");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// list
// ---------------------------------------------------------------------------

struct ListOptions {
  std::string format = "text";
  std::string out_path;
};

inline int cmd_list(const ListOptions& opt, std::ostream& out) {
  OutputTarget target{out, opt.out_path};
  if (opt.format == "text") {
    target.write([&](std::ostream& os) {
      os << "families:\n";
      for (const auto& [name, fam] : family_names()) {
        os << "  " << name;
        if (family_has_param(fam)) os << "  (param " << family_param_name(fam) << ")";
        os << "  ~ (" << family_g_string(fam, "r") << ", " << family_f_string(fam) << ")\n";
      }
      os << "identities:\n";
      for (const auto& info : identity_registry()) {
        os << "  " << info.id << "  [" << (info.scalar ? "scalar" : "poly");
        if (info.distinct_variants) os << ", as-stated|derivation";
        if (!info.params.empty()) os << ", params " << join(info.params, ",");
        if (info.n_cap > 0) os << ", n<=" << info.n_cap;
        os << "]  " << info.summary << "\n";
      }
    });
  } else if (opt.format == "json") {
    Json doc;
    doc["tool_version"] = kToolVersion;
    doc["command"] = "list";
    doc["config"] = Json::object();
    Json results = Json::array();
    for (const auto& [name, fam] : family_names())
      results.push_back({{"kind", "family"},
                         {"name", name},
                         {"param", family_has_param(fam) ? family_param_name(fam) : ""},
                         {"associated", family_is_associated(fam)},
                         {"pair_g", family_g_string(fam, "r")},
                         {"pair_f", family_f_string(fam)}});
    for (const auto& info : identity_registry())
      results.push_back({{"kind", "identity"},
                         {"id", info.id},
                         {"statement", info.scalar ? "scalar" : "poly"},
                         {"variants", info.distinct_variants ? "as-stated|derivation" : "single"},
                         {"params", info.params},
                         {"n_min", info.n_min},
                         {"n_cap", info.n_cap},
                         {"summary", info.summary}});
    doc["results"] = std::move(results);
    target.write([&](std::ostream& os) { os << doc.dump(2) << "\n"; });
  } else {
    throw UsageError("unknown format '" + opt.format + "'");
  }
  return kExitOk;
}

}  // namespace detail

// Front end; returns the process exit code. Streams are injected so tests
// can capture output.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact umbral-calculus kernel and identity checker", "umbra"};
  app.require_subcommand(1);

  detail::SeqOptions seq_opt;
  auto* seq = app.add_subcommand("seq", "print a polynomial family as coefficient rows");
  seq->add_option("family", seq_opt.family, "family name (see 'umbra list')")->required();
  seq->add_option("--n-max", seq_opt.n_max, "largest degree")->check(CLI::NonNegativeNumber);
  seq->add_option("--trunc", seq_opt.trunc, "truncation of the displayed delta series")
      ->check(CLI::NonNegativeNumber);
  seq->add_option("--param", seq_opt.raw_params, "family parameter, name=p/q");
  seq->add_option("--format", seq_opt.format, "text|json|csv");
  seq->add_option("--out", seq_opt.out_path, "write output to a file");

  detail::VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "check registered identities exactly");
  verify->add_option("ids", verify_opt.ids, "identity ids, or 'all'");
  verify->add_option("--variant", verify_opt.variant, "as-stated|derivation|both");
  verify->add_option("--n-max", verify_opt.n_max, "verify n = 1..n_max")
      ->check(CLI::PositiveNumber);
  verify->add_option("--param", verify_opt.raw_params,
                     "parameter value, name=p/q (repeat for a sweep)");
  verify->add_option("--format", verify_opt.format, "text|json|csv");
  verify->add_option("--out", verify_opt.out_path, "write output to a file");

  detail::SeriesOptions series_opt;
  auto* series = app.add_subcommand("series", "expand a series expression");
  series->add_option("expr", series_opt.text, "series expression, e.g. \"t/(exp(t)-1)\"")
      ->required();
  series->add_option("--trunc", series_opt.trunc, "truncation order")
      ->check(CLI::NonNegativeNumber);
  series->add_option("--param", series_opt.raw_params, "parameter binding, name=p/q");
  series->add_option("--format", series_opt.format, "text|json|csv");
  series->add_option("--out", series_opt.out_path, "write output to a file");

  detail::ListOptions list_opt;
  auto* list = app.add_subcommand("list", "enumerate families and identities");
  list->add_option("--format", list_opt.format, "text|json");
  list->add_option("--out", list_opt.out_path, "write output to a file");

  std::vector<std::string> argv(args);
  try {
    app.parse(std::vector<std::string>(argv.rbegin(), argv.rend()));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (seq->parsed()) return detail::cmd_seq(seq_opt, out, err);
    if (verify->parsed()) return detail::cmd_verify(verify_opt, out);
    if (series->parsed()) return detail::cmd_series(series_opt, out, err);
    if (list->parsed()) return detail::cmd_list(list_opt, out);
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "usage error: no subcommand\n";
  return kExitUsage;
}

}  // namespace umbra::cli
