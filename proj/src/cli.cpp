#include "refloor/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "refloor/bps.hpp"
#include "refloor/errors.hpp"
#include "refloor/k3series.hpp"
#include "refloor/serialize.hpp"

namespace refloor {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw DomainError("not an integer: '" + token + "'");
    }
    if (used != token.size()) throw DomainError("not an integer: '" + token + "'");
    out.push_back(value);
  }
  if (text.back() == ',') throw DomainError("trailing comma in '" + text + "'");
  return out;
}

CurveClass parse_class_spec(const std::string& text) {
  auto values = parse_int_list(text);
  if (values.empty()) throw DomainError("class spec must be 'd,a1,...,an'");
  CurveClass beta;
  beta.d = values.front();
  beta.a.assign(values.begin() + 1, values.end());
  return beta;
}

namespace {

enum class Format { Text, Json, Csv };

struct RunConfig {
  std::string command;
  std::string class_spec;
  std::string mu;
  std::string nu;
  int surface_n = -1;
  int degree = 0;
  int h_max = 0;
  bool check = false;
  int e_real = -16;
  std::optional<int> gw_genus;
  std::optional<int> pt_truncation;
  std::optional<std::string> cache_dir;
  int threads = 1;
  Format format = Format::Text;
};

std::string rational_string(const Rational& r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void print_tally_rows(const std::vector<DiagramTally>& rows, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    out << "canonical_key,marking_count,complex,real,refined\n";
    for (const auto& r : rows) {
      out << to_hex(row_key(r)) << ',' << r.marking_count << ',' << to_decimal(r.complex) << ','
          << to_decimal(r.real) << ',' << csv_quote(r.refined.to_term_string()) << '\n';
    }
    return;
  }
  BigInt complex_total = 0;
  BigInt real_total = 0;
  QLaurent refined_total;
  out << std::left << std::setw(4) << "#" << std::setw(10) << "markings" << std::setw(10) << "complex"
      << std::setw(10) << "real"
      << "refined\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << std::left << std::setw(4) << (i + 1) << std::setw(10) << r.marking_count << std::setw(10)
        << to_decimal(r.complex) << std::setw(10) << to_decimal(r.real) << r.refined.to_string() << '\n';
    complex_total += r.complex;
    real_total += r.real;
    refined_total += r.refined;
  }
  out << "total: " << rows.size() << " diagrams, complex " << to_decimal(complex_total) << ", real "
      << to_decimal(real_total) << ", refined " << refined_total.to_string() << '\n';
}

void print_bps_text(const BpsResult& r, std::ostream& out) {
  out << "class: " << r.beta.to_string() << '\n';
  if (r.tangency) {
    out << "mu: " << json(r.tangency->mu).dump() << "  nu: " << json(r.tangency->nu).dump() << '\n';
  }
  if (r.surface_n) out << "surface: n = " << *r.surface_n << '\n';
  out << "bps: " << r.poly.to_string() << '\n';
  out << "q=1: " << to_decimal(r.gw_at_1) << '\n';
  out << "q=-1: " << to_decimal(r.welschinger_at_minus_1) << '\n';
}

EnumerationOptions options_for(const RunConfig& cfg) {
  EnumerationOptions opts;
  opts.threads = cfg.threads;
  std::optional<std::filesystem::path> flag;
  if (cfg.cache_dir) flag = *cfg.cache_dir;
  opts.cache_dir = resolve_cache_dir(flag);
  return opts;
}

Tangency tangency_of(const RunConfig& cfg) {
  Tangency t;
  t.mu = parse_int_list(cfg.mu);
  t.nu = parse_int_list(cfg.nu);
  return t;
}

void run_diagrams(const RunConfig& cfg, std::ostream& out) {
  const CurveClass beta = parse_class_spec(cfg.class_spec);
  const Tangency t = tangency_of(cfg);
  const auto rows = tally(beta, t, options_for(cfg));
  if (cfg.format == Format::Json) {
    json j;
    j["format"] = kJsonFormatVersion;
    j["class"] = to_json(beta);
    j["tangency"] = to_json(t);
    j["rows"] = json::array();
    for (const auto& r : rows) j["rows"].push_back(to_json(r));
    out << j.dump(2) << '\n';
    return;
  }
  print_tally_rows(rows, cfg.format, out);
}

void run_relative(const RunConfig& cfg, std::ostream& out) {
  const CurveClass beta = parse_class_spec(cfg.class_spec);
  const Tangency t = tangency_of(cfg);
  const auto rows = tally(beta, t, options_for(cfg));
  BpsResult r;
  for (const auto& row : rows) r.poly += row.refined;
  r.gw_at_1 = evaluate_at_sign(r.poly, 1);
  r.welschinger_at_minus_1 = evaluate_at_sign(r.poly, -1);
  r.beta = beta;
  r.tangency = t;
  const Rational w = welschinger_from_bps(r.poly, t);
  if (cfg.format == Format::Json) {
    json j = to_json(r);
    j["welschinger"] = rational_string(w);
    j["rows"] = json::array();
    for (const auto& row : rows) j["rows"].push_back(to_json(row));
    out << j.dump(2) << '\n';
  } else if (cfg.format == Format::Csv) {
    out << "field,value\n";
    out << "class," << csv_quote(r.beta.to_string()) << '\n';
    out << "mu," << csv_quote(cfg.mu) << '\n';
    out << "nu," << csv_quote(cfg.nu) << '\n';
    out << "poly," << csv_quote(r.poly.to_term_string()) << '\n';
    out << "q1," << to_decimal(r.gw_at_1) << '\n';
    out << "qm1," << to_decimal(r.welschinger_at_minus_1) << '\n';
    out << "welschinger," << rational_string(w) << '\n';
  } else {
    print_tally_rows(rows, cfg.format, out);
    print_bps_text(r, out);
    out << "welschinger: " << rational_string(w) << '\n';
  }
}

void run_absolute(const RunConfig& cfg, std::ostream& out) {
  CurveClass beta = parse_class_spec(cfg.class_spec);
  if (cfg.surface_n < 0 || cfg.surface_n > 6) throw DomainError("--n must lie in 0..6");
  beta = pad_class(beta, cfg.surface_n);
  BpsResult r = abv_absolute(beta, options_for(cfg));
  const int m_beta = beta.point_count();
  std::optional<PtSeries> pt;
  if (cfg.pt_truncation) pt = pt_series(r.poly, m_beta, *cfg.pt_truncation);
  std::vector<Rational> gw;
  if (cfg.gw_genus) gw = gw_expansion_absolute(r.poly, m_beta, *cfg.gw_genus);

  if (cfg.format == Format::Json) {
    json j = to_json(r);
    if (pt) {
      j["pt_series"] = {{"poly", to_json(pt->poly)}};
      if (pt->exact_through) j["pt_series"]["exact_through"] = *pt->exact_through;
    }
    if (cfg.gw_genus) {
      j["gw"] = json::array();
      for (const auto& v : gw) j["gw"].push_back(rational_string(v));
    }
    out << j.dump(2) << '\n';
  } else if (cfg.format == Format::Csv) {
    out << "field,value\n";
    out << "class," << csv_quote(r.beta.to_string()) << '\n';
    out << "surface_n," << *r.surface_n << '\n';
    out << "poly," << csv_quote(r.poly.to_term_string()) << '\n';
    out << "q1," << to_decimal(r.gw_at_1) << '\n';
    out << "qm1," << to_decimal(r.welschinger_at_minus_1) << '\n';
    if (pt) out << "pt_series," << csv_quote(pt->poly.to_term_string()) << '\n';
    for (std::size_t g = 0; g < gw.size(); ++g) out << "gw_" << g << ',' << rational_string(gw[g]) << '\n';
  } else {
    print_bps_text(r, out);
    if (pt) {
      out << "pt series: " << pt->poly.to_string();
      if (pt->exact_through) out << " + O(q^" << (*pt->exact_through + 1) << ")";
      out << '\n';
    }
    for (std::size_t g = 0; g < gw.size(); ++g) out << "GW_" << g << ": " << rational_string(gw[g]) << '\n';
  }
}

void run_kkv(const RunConfig& cfg, std::ostream& out) {
  if (cfg.h_max < 0) throw DomainError("--h-max must be nonnegative");
  const auto rows = check_k3_welschinger(cfg.h_max, cfg.e_real);
  if (cfg.format == Format::Json) {
    json j;
    j["format"] = kJsonFormatVersion;
    j["e_real"] = cfg.e_real;
    j["rows"] = json::array();
    for (const auto& row : rows) {
      json item = to_json(row);
      if (!cfg.check) item.erase("equal");
      j["rows"].push_back(item);
    }
    out << j.dump(2) << '\n';
    return;
  }
  if (cfg.format == Format::Csv) {
    out << "h,poly,q1,qm1,real_k3" << (cfg.check ? ",equal" : "") << '\n';
    for (const auto& row : rows) {
      out << row.h << ',' << csv_quote(row.kkv.to_term_string()) << ',' << to_decimal(evaluate_at_sign(row.kkv, 1))
          << ',' << to_decimal(row.kkv_at_minus_1) << ',' << to_decimal(row.real_count);
      if (cfg.check) out << ',' << (row.equal ? "true" : "false");
      out << '\n';
    }
    return;
  }
  for (const auto& row : rows) {
    out << "h=" << row.h << "  " << row.kkv.to_string() << "  q=1: " << to_decimal(evaluate_at_sign(row.kkv, 1))
        << "  q=-1: " << to_decimal(row.kkv_at_minus_1) << "  real: " << to_decimal(row.real_count);
    if (cfg.check) out << "  " << (row.equal ? "equal" : "DIFFERENT");
    out << '\n';
  }
}

void run_enumerate(const RunConfig& cfg, std::ostream& out) {
  const auto diagrams = enumerate_diagrams(cfg.degree, options_for(cfg));
  if (cfg.format == Format::Json) {
    json j;
    j["format"] = kJsonFormatVersion;
    j["degree"] = cfg.degree;
    j["diagrams"] = json::array();
    for (const auto& g : diagrams) j["diagrams"].push_back(to_json(g));
    out << j.dump(2) << '\n';
  } else if (cfg.format == Format::Csv) {
    out << "canonical_key,vertices,edges,legs\n";
    for (const auto& g : diagrams) {
      out << to_hex(canonical_key(g)) << ',' << g.vertices.size() << ',' << g.edges.size() << ','
          << g.legs.size() << '\n';
    }
  } else {
    out << "degree " << cfg.degree << ": " << diagrams.size() << " floor diagrams\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Refined floor-diagram counts of rational surfaces", "refloor"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir, "Diagram cache directory (REFLOOR_CACHE overrides)");

  auto add_class_flags = [&](CLI::App* sub) {
    sub->add_option("--class", cfg.class_spec, "Class as d,a1,...,an")->required();
    sub->add_option("--mu", cfg.mu, "Contact orders at fixed points, comma separated");
    sub->add_option("--nu", cfg.nu, "Contact orders at moving points, comma separated");
  };

  auto* diagrams = app.add_subcommand("diagrams", "Per-diagram tallies of a relative count");
  add_class_flags(diagrams);
  auto* relative = app.add_subcommand("relative", "Relative BPS polynomial and Welschinger value");
  add_class_flags(relative);

  auto* absolute = app.add_subcommand("absolute", "Absolute BPS polynomial on the plane blown up at n points");
  absolute->add_option("--n", cfg.surface_n, "Number of blown-up points (0..6)")->required();
  absolute->add_option("--class", cfg.class_spec, "Class as d,a1,...,an")->required();
  absolute->add_option("--pt-series", cfg.pt_truncation, "Attach the stable-pairs series (truncation order)");
  absolute->add_option("--gw-genus", cfg.gw_genus, "Attach GW invariants up to this genus");

  auto* kkv = app.add_subcommand("kkv", "K3 generating-series coefficients");
  kkv->add_option("--h-max", cfg.h_max, "Highest power of u")->required();
  kkv->add_flag("--check", cfg.check, "Compare q=-1 values with the real K3 series");
  kkv->add_option("--e-real", cfg.e_real, "Euler characteristic of the real locus")->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate (and cache) all floor diagrams of a degree");
  enumerate->add_option("--degree", cfg.degree, "Degree")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;

  try {
    // Buffer so that a failure part-way leaves stdout empty.
    std::ostringstream buffer;
    if (diagrams->parsed()) {
      run_diagrams(cfg, buffer);
    } else if (relative->parsed()) {
      run_relative(cfg, buffer);
    } else if (absolute->parsed()) {
      run_absolute(cfg, buffer);
    } else if (kkv->parsed()) {
      run_kkv(cfg, buffer);
    } else {
      run_enumerate(cfg, buffer);
    }
    out << buffer.str();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace refloor
