// gdiscord: Gaussian discord measures for two-mode states.
//
//   compute   print the discord measures of one state
//   sweep     scan a benchmark family, write one CSV row per grid point
//   protocol  signal-encoding mutual-information study, CSV per noise level
//   validate  run the full self-check battery
//
// Exit codes: 0 ok, 2 invalid input, 3 numerical failure, 4 validation failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gdiscord/discord.hpp"
#include "gdiscord/protocol.hpp"
#include "gdiscord/state_io.hpp"
#include "gdiscord/symplectic.hpp"
#include "gdiscord/validate.hpp"

namespace {

using namespace gdiscord;

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v))
    throw std::invalid_argument("cannot parse " + what + ": '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const std::string& p : raw) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--param expects name=value, got '" + p + "'");
    const std::string name = p.substr(0, eq);
    if (out.count(name)) throw std::invalid_argument("duplicate --param " + name);
    out[name] = parse_double(p.substr(eq + 1), "--param " + name);
  }
  return out;
}

const std::set<std::string> kAllMeasures{"ogd", "gqd", "renyi2", "closed_form"};

std::set<std::string> parse_measures(const std::string& text) {
  if (text.empty()) return kAllMeasures;
  std::set<std::string> out;
  for (const std::string& m : split(text, ',')) {
    if (!kAllMeasures.count(m))
      throw std::invalid_argument("unknown measure '" + m +
                                  "' (expected ogd, gqd, renyi2, closed_form)");
    out.insert(m);
  }
  return out;
}

std::vector<double> parse_vs_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& v : split(text, ','))
    out.push_back(parse_double(v, "--vs entry"));
  if (out.empty()) throw std::invalid_argument("--vs needs at least one value");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] <= 0.0) throw std::invalid_argument("--vs values must be positive");
    if (i > 0 && out[i] <= out[i - 1])
      throw std::invalid_argument("--vs values must be strictly increasing");
  }
  return out;
}

struct RangeSpec {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

RangeSpec parse_range(const std::string& text, Family fallback) {
  RangeSpec r;
  std::string body = text;
  const auto eq = text.find('=');
  if (eq != std::string::npos && eq < text.find(':')) {
    r.name = text.substr(0, eq);
    body = text.substr(eq + 1);
  }
  const std::vector<std::string> parts = split(body, ':');
  if (parts.size() != 3)
    throw std::invalid_argument("--range expects [name=]start:stop:step, got '" + text + "'");
  r.start = parse_double(parts[0], "--range start");
  r.stop = parse_double(parts[1], "--range stop");
  r.step = parse_double(parts[2], "--range step");
  if (r.step <= 0.0) throw std::invalid_argument("--range step must be positive");
  if (r.stop < r.start) throw std::invalid_argument("--range stop must be >= start");
  if (r.name.empty()) r.name = default_sweep_param(fallback);
  return r;
}

StateSpec resolve_state(const std::string& state_path, const std::string& family,
                        const std::vector<std::string>& params) {
  if (!state_path.empty()) {
    if (!family.empty() || !params.empty())
      throw std::invalid_argument("give either --state or --family/--param, not both");
    return load_state_spec(state_path);
  }
  if (family.empty())
    throw std::invalid_argument("no state given (use --state <file> or --family with --param)");
  StateSpec spec;
  spec.family = make_family(family, parse_params(params));
  return spec;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write output file: " + path);
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------- compute

int cmd_compute(const StateSpec& spec, const std::set<std::string>& measures,
                std::uint64_t seed, const std::string& out_path) {
  const TwoModeCov cov = realize_state(spec);
  OptimOptions opts;
  opts.seed = seed;

  std::optional<DiscordReport> rep;
  std::optional<double> gqd_value, renyi2_value;
  if (measures.count("ogd")) {
    rep = ogd(cov, opts);
    gqd_value = rep->gqd;
    renyi2_value = rep->renyi2;
  } else {
    if (measures.count("gqd")) gqd_value = gqd(cov, opts).value;
    if (measures.count("renyi2")) renyi2_value = renyi2_discord(cov, opts).value;
  }
  std::optional<ClosedFormOgd> cf;
  if (spec.family && measures.count("closed_form")) cf = closed_form_ogd(*spec.family);

  std::ostringstream text;
  nlohmann::ordered_json record;
  if (rep) {
    text << "ogd         " << format_g12(rep->ogd) << "\n";
    record["ogd"] = rep->ogd;
  }
  if (gqd_value && measures.count("gqd")) {
    text << "gqd         " << format_g12(*gqd_value) << "\n";
    record["gqd"] = *gqd_value;
  }
  if (renyi2_value && measures.count("renyi2")) {
    text << "renyi2      " << format_g12(*renyi2_value) << "\n";
    record["renyi2"] = *renyi2_value;
  }
  if (rep) {
    text << "hmin_local  " << format_g12(rep->hmin_local) << "\n"
         << "hmin_joint  " << format_g12(rep->hmin_joint) << "\n"
         << "det_local   " << format_g12(rep->det_local) << "\n"
         << "det_joint   " << format_g12(rep->det_joint) << "\n"
         << "clamped     " << yes_no(rep->clamped) << "\n"
         << "local A     theta=" << format_g12(rep->opt_local_a.theta)
         << " l=" << format_g12(rep->opt_local_a.l) << "\n"
         << "local B     theta=" << format_g12(rep->opt_local_b.theta)
         << " l=" << format_g12(rep->opt_local_b.l) << "\n"
         << "joint       phi_a=" << format_g12(rep->opt_joint.phi_a)
         << " phi_b=" << format_g12(rep->opt_joint.phi_b)
         << " eta=" << format_g12(rep->opt_joint.eta)
         << " theta_a=" << format_g12(rep->opt_joint.m_a.theta)
         << " l_a=" << format_g12(rep->opt_joint.m_a.l)
         << " theta_b=" << format_g12(rep->opt_joint.m_b.theta)
         << " l_b=" << format_g12(rep->opt_joint.m_b.l) << "\n";
    record["hmin_local"] = rep->hmin_local;
    record["hmin_joint"] = rep->hmin_joint;
    record["det_local"] = rep->det_local;
    record["det_joint"] = rep->det_joint;
    record["clamped"] = rep->clamped;
    record["opt_local"] = {{"a", {{"theta", rep->opt_local_a.theta}, {"l", rep->opt_local_a.l}}},
                           {"b", {{"theta", rep->opt_local_b.theta}, {"l", rep->opt_local_b.l}}}};
    record["opt_joint"] = {{"phi_a", rep->opt_joint.phi_a}, {"phi_b", rep->opt_joint.phi_b},
                           {"eta", rep->opt_joint.eta},     {"theta_a", rep->opt_joint.m_a.theta},
                           {"l_a", rep->opt_joint.m_a.l},   {"theta_b", rep->opt_joint.m_b.theta},
                           {"l_b", rep->opt_joint.m_b.l}};
  }
  if (cf) {
    text << "closed_form ogd=" << format_g12(cf->value)
         << " det_local=" << format_g12(cf->det_local)
         << " det_joint=" << format_g12(cf->det_joint) << " branch=" << cf->branch << "\n";
    record["closed_form"] = {{"ogd", cf->value},
                             {"det_local", cf->det_local},
                             {"det_joint", cf->det_joint},
                             {"branch", cf->branch}};
  }

  std::cout << text.str();
  if (!out_path.empty()) {
    std::ofstream out = open_out(out_path);
    out << record.dump(2) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------ sweep

struct SweepRow {
  double value = 0.0;
  std::optional<double> ogd_numeric, ogd_closed, gqd_v, renyi2_v, det_local, det_joint;
  std::string branch;
};

std::string cell(const std::optional<double>& v) { return v ? format_g12(*v) : ""; }

int cmd_sweep(const std::string& family, const std::vector<std::string>& raw_params,
              const std::string& range_text, const std::set<std::string>& measures,
              std::uint64_t seed, const std::string& out_path) {
  if (family.empty()) throw std::invalid_argument("sweep needs --family");
  const Family variant = family_from_name(family);
  const RangeSpec range = parse_range(range_text, variant);

  std::map<std::string, double> params = parse_params(raw_params);
  if (!params.count(range.name)) params[range.name] = range.start;
  const FamilyParams base = make_family(family, params);

  const long n = static_cast<long>(std::floor((range.stop - range.start) / range.step + 1e-9)) + 1;
  std::vector<FamilyParams> points;
  std::vector<double> values;
  points.reserve(n);
  values.reserve(n);
  for (long i = 0; i < n; ++i) {
    const double v = std::min(range.start + static_cast<double>(i) * range.step, range.stop);
    FamilyParams fp = with_param(base, range.name, v);
    family_cov(fp);  // reject invalid grid points before any heavy work
    points.push_back(fp);
    values.push_back(v);
  }

  OptimOptions opts;
  opts.seed = seed;
  std::vector<SweepRow> rows(points.size());
  const auto fill_row = [&](std::size_t i) {
    SweepRow& row = rows[i];
    const FamilyParams& fp = points[i];
    row.value = values[i];
    const TwoModeCov cov = family_cov(fp);
    if (measures.count("ogd")) {
      const DiscordReport rep = ogd(cov, opts);
      row.ogd_numeric = rep.ogd;
      row.det_local = rep.det_local;
      row.det_joint = rep.det_joint;
      if (measures.count("gqd")) row.gqd_v = rep.gqd;
      if (measures.count("renyi2")) row.renyi2_v = rep.renyi2;
    } else {
      if (measures.count("gqd")) row.gqd_v = gqd(cov, opts).value;
      if (measures.count("renyi2")) row.renyi2_v = renyi2_discord(cov, opts).value;
    }
    if (measures.count("closed_form")) {
      const ClosedFormOgd cf = closed_form_ogd(fp);
      row.ogd_closed = cf.value;
      row.branch = cf.branch;
    }
  };

  // rows are independent; compute them in parallel, write them in order
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      try {
        fill_row(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  unsigned n_threads = std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, rows.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::ostringstream csv;
  csv << "sweep_value,ogd_numeric,ogd_closed_form,gqd,renyi2,det_local,det_joint,branch\n";
  for (const SweepRow& row : rows)
    csv << format_g12(row.value) << ',' << cell(row.ogd_numeric) << ',' << cell(row.ogd_closed)
        << ',' << cell(row.gqd_v) << ',' << cell(row.renyi2_v) << ',' << cell(row.det_local)
        << ',' << cell(row.det_joint) << ',' << row.branch << "\n";

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out = open_out(out_path);
    out << csv.str();
  }
  return 0;
}

// --------------------------------------------------------------- protocol

int cmd_protocol(const StateSpec& spec, const std::vector<double>& schedule, std::uint64_t seed,
                 const std::string& out_path) {
  const TwoModeCov cov = realize_state(spec);
  OptimOptions opts;
  opts.seed = seed;
  const DiscordReport rep = ogd(cov, opts);

  std::ostringstream csv;
  csv << "vs,i_local,i_joint,gap,ogd,abs_gap_minus_ogd\n";
  for (const double vs : schedule) {
    const MutualInfoReport mi = mutual_info_report(cov, vs, opts);
    csv << format_g12(vs) << ',' << format_g12(mi.i_local) << ',' << format_g12(mi.i_joint) << ','
        << format_g12(mi.gap) << ',' << format_g12(rep.ogd) << ','
        << format_g12(std::abs(mi.gap - rep.ogd)) << "\n";
  }

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out = open_out(out_path);
    out << csv.str();
  }
  return 0;
}

// --------------------------------------------------------------- validate

int cmd_validate(std::uint64_t seed, bool inject_failure, const std::string& out_path) {
  const ValidationReport report = run_validation(seed, inject_failure);
  std::ostringstream text;
  for (const CheckResult& c : report.checks)
    text << (c.pass ? "PASS" : "FAIL") << "  " << c.criterion << "  " << c.name << "  [" << c.detail
         << "]\n";
  text << (report.all_pass() ? "all checks passed" : "some checks FAILED") << "\n";
  std::cout << text.str();
  if (!out_path.empty()) {
    std::ofstream out = open_out(out_path);
    out << text.str();
  }
  return report.all_pass() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"Gaussian discord measures for two-mode states"};
  app.require_subcommand(1);

  std::string state_path, family, range_text, measures_text, out_path, vs_text;
  std::vector<std::string> raw_params;
  std::uint64_t seed = 0;
  bool inject_failure = false;

  CLI::App* compute = app.add_subcommand("compute", "discord measures of one state");
  compute->add_option("--state", state_path, "state document (json)");
  compute->add_option("--family", family, "benchmark family name");
  compute->add_option("--param", raw_params, "family parameter name=value")->delimiter(',');
  compute->add_option("--measures", measures_text, "comma list: ogd,gqd,renyi2,closed_form");
  compute->add_option("--seed", seed, "optimizer seed");
  compute->add_option("--out", out_path, "also write a json record here");

  CLI::App* sweep = app.add_subcommand("sweep", "scan a family, one CSV row per point");
  sweep->add_option("--family", family, "benchmark family name")->required();
  sweep->add_option("--param", raw_params, "family parameter name=value")->delimiter(',');
  sweep->add_option("--range", range_text, "[name=]start:stop:step")->required();
  sweep->add_option("--measures", measures_text, "comma list: ogd,gqd,renyi2,closed_form");
  sweep->add_option("--seed", seed, "optimizer seed");
  sweep->add_option("--out", out_path, "CSV path (stdout when absent)");

  CLI::App* protocol = app.add_subcommand("protocol", "signal-encoding information study");
  protocol->add_option("--state", state_path, "state document (json)");
  protocol->add_option("--family", family, "benchmark family name");
  protocol->add_option("--param", raw_params, "family parameter name=value")->delimiter(',');
  protocol->add_option("--vs", vs_text, "comma list of signal variances (increasing)");
  protocol->add_option("--seed", seed, "optimizer seed");
  protocol->add_option("--out", out_path, "CSV path (stdout when absent)");

  CLI::App* validate = app.add_subcommand("validate", "run the self-check battery");
  validate->add_option("--seed", seed, "optimizer seed");
  validate->add_option("--out", out_path, "also write the report here");
  validate->add_flag("--inject-failure", inject_failure)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed())
      return cmd_compute(resolve_state(state_path, family, raw_params),
                         parse_measures(measures_text), seed, out_path);
    if (sweep->parsed())
      return cmd_sweep(family, raw_params, range_text, parse_measures(measures_text), seed,
                       out_path);
    if (protocol->parsed())
      return cmd_protocol(resolve_state(state_path, family, raw_params),
                          vs_text.empty() ? default_vs_schedule() : parse_vs_list(vs_text), seed,
                          out_path);
    if (validate->parsed()) return cmd_validate(seed, inject_failure, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
