// sofree: command line front end to the exact formulas and the Monte Carlo
// experiments. Output is one compact JSON document (or JSON lines) per call.
//
// Exit status: 0 success, 2 invalid input, 3 cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sofree/sofree.hpp"

using namespace sofree;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "sofree.report/1";

struct Caps {
  int nc = kDefaultNcCap;
  int weingarten = kDefaultWeingartenCap;
  int epsilon = kDefaultEpsilonCap;
};

Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json rational_json(const mpq_class& q) { return to_string(q); }

Json polynomial_json(const PolynomialZ& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(integer_json(c));
  return out;
}

Json permutation_json(const Permutation& p, bool blocks) {
  Json out;
  out["n"] = p.size();
  if (blocks) {
    // Cycles read as blocks, sorted, fixed points included.
    Json b = Json::array();
    for (auto c : p.cycles()) {
      std::sort(c.begin(), c.end());
      b.push_back(c);
    }
    out["blocks"] = b;
  } else {
    out["cycles"] = p.nontrivial_cycles();
  }
  return out;
}

void emit(const Json& j) { std::cout << j.dump() << '\n'; }

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("malformed " + what + ": '" + text + "'");
    }
    detail::require(used == item.size(), "malformed " + what + ": '" + text + "'");
    out.push_back(v);
  }
  detail::require(!out.empty(), what + " is empty");
  return out;
}

CycleType parse_cycle_type(const std::string& text) {
  CycleType type = parse_int_list(text, "cycle type");
  for (int part : type) detail::require(part >= 1, "cycle type parts must be positive");
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

EpsilonVector parse_epsilon(const std::string& text) {
  std::vector<int> signs;
  for (char c : text) {
    if (c == '+') signs.push_back(1);
    else if (c == '-') signs.push_back(-1);
    else if (c != ',' && c != ' ') throw InvalidArgument("epsilon: expected '+' or '-', got '" + std::string(1, c) + "'");
  }
  detail::require(!signs.empty(), "epsilon is empty");
  return EpsilonVector(std::move(signs));
}

// ---- spec files ------------------------------------------------------------

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), "cannot open spec file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("malformed spec file: " + std::string(e.what()));
  }
}

mpq_class entry_of(const Json& e) {
  if (e.is_number_integer()) return mpq_class(e.get<long>());
  if (e.is_string()) return parse_rational(e.get<std::string>());
  throw InvalidArgument("matrix entries must be integers or \"p/q\" strings");
}

std::vector<ExactMatrix> matrices_of(const Json& spec) {
  std::vector<ExactMatrix> out;
  if (!spec.contains("matrices")) return out;
  detail::require(spec["matrices"].is_array(), "\"matrices\" must be an array");
  for (const auto& m : spec["matrices"]) {
    detail::require(m.is_array() && !m.empty(), "each matrix must be a non-empty array of rows");
    const int n = static_cast<int>(m.size());
    ExactMatrix x(n);
    for (int i = 0; i < n; ++i) {
      const auto& row = m[static_cast<std::size_t>(i)];
      detail::require(row.is_array() && static_cast<int>(row.size()) == n, "matrices must be square");
      for (int j = 0; j < n; ++j) x(i, j) = entry_of(row[static_cast<std::size_t>(j)]);
    }
    out.push_back(std::move(x));
  }
  return out;
}

TraceWordSpec groups_of(const Json& groups) {
  detail::require(groups.is_array() && !groups.empty(), "\"groups\" must be a non-empty array");
  std::vector<std::vector<TraceLetter>> out;
  for (const auto& g : groups) {
    detail::require(g.is_array(), "each group must be an array of letters");
    std::vector<TraceLetter> letters;
    for (const auto& l : g) {
      detail::require(l.is_object(), "letters are objects {\"d\": index|null, \"eps\": 1|-1}");
      TraceLetter letter;
      if (l.contains("d") && !l["d"].is_null()) {
        detail::require(l["d"].is_number_unsigned(), "letter \"d\" must be a matrix index or null");
        letter.d = l["d"].get<std::size_t>();
      }
      detail::require(l.contains("eps") && l["eps"].is_number_integer(), "letter needs \"eps\": 1 or -1");
      letter.eps = l["eps"].get<int>();
      letters.push_back(letter);
    }
    out.push_back(std::move(letters));
  }
  return TraceWordSpec(std::move(out));
}

// ---- k2-limit words ----------------------------------------------------------

struct LetterTable {
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<mpq_class>> patterns;
};

LetterTable parse_letters(const std::vector<std::string>& defs) {
  LetterTable t;
  for (const auto& def : defs) {
    const auto eq = def.find('=');
    detail::require(eq != std::string::npos && eq > 0, "letter definition must look like NAME=v1,v2,...");
    const std::string name = def.substr(0, eq);
    detail::require(name != "U" && name != "U*", "letter name U is reserved");
    detail::require(!t.index.count(name), "letter defined twice: " + name);
    std::vector<mpq_class> pattern;
    std::stringstream ss(def.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) pattern.push_back(parse_rational(item));
    detail::require(!pattern.empty(), "letter " + name + " has an empty pattern");
    t.index[name] = t.patterns.size();
    t.patterns.push_back(std::move(pattern));
  }
  return t;
}

// Tokens U, U* and letter names; a letter multiplies the next U or U*.
TraceWordSpec parse_word(const std::string& text, const LetterTable& table) {
  std::vector<TraceLetter> letters;
  std::optional<std::size_t> pending;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token == "U" || token == "U*") {
      letters.push_back({pending, token == "U" ? 1 : -1});
      pending.reset();
    } else {
      auto it = table.index.find(token);
      detail::require(it != table.index.end(), "unknown letter '" + token + "' (define it with --letter)");
      detail::require(!pending, "two letters in a row before '" + token + "'");
      pending = it->second;
    }
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ') flush();
    else token.push_back(c);
  }
  flush();
  detail::require(!letters.empty(), "word has no U or U*");
  if (pending) {
    // Trailing letter: move it to the front, which leaves the trace unchanged.
    detail::require(!letters.front().d, "trailing letter cannot be absorbed: first U already carries one");
    letters.front().d = pending;
  }
  return TraceWordSpec({letters});
}

// ---- Monte Carlo reports -----------------------------------------------------

struct McOptions {
  long n = 20;
  long samples = 10000;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string format = "json";
  std::string output;
  std::string json_path;
  int max_power = 3;
  int max_degree = 4;
  long mixed_samples = 0;
  long mixed_n = 20;
  std::vector<std::string> words;
};

Json config_json(const std::string& sub, const McOptions& o, const Caps& caps) {
  Json c;
  c["subcommand"] = "mc " + sub;
  c["caps"] = {{"enumeration", caps.nc}, {"weingarten", caps.weingarten}, {"epsilon", caps.epsilon}};
  c["N"] = o.n;
  c["samples"] = o.samples;
  c["seed"] = o.seed;
  c["threads"] = o.threads;
  c["format"] = o.format;
  c["output"] = o.output;
  c["rng"] = mc::RngConfig::algorithm;
  c["batches"] = mc::kNumBatches;
  if (sub == "ds") c["max_power"] = o.max_power;
  if (sub == "words") c["words"] = o.words;
  if (sub == "chebyshev") {
    c["max_degree"] = o.max_degree;
    c["mixed_samples"] = o.mixed_samples;
    c["mixed_N"] = o.mixed_n;
  }
  return c;
}

Json report_json(const mc::Report& rep, const Json& config) {
  Json j;
  j["schema"] = kSchema;
  j["config"] = config;
  j["experiment"] = rep.experiment;
  j["notes"] = rep.notes;
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"label", r.label},
                    {"estimate", r.estimate.real()},
                    {"estimate_imag", r.estimate.imag()},
                    {"std_error", r.std_error},
                    {"target", r.target},
                    {"sigmas", r.sigmas},
                    {"tolerance", r.tolerance},
                    {"pass", r.pass}});
  }
  j["rows"] = rows;
  Json diags = Json::array();
  for (const auto& d : rep.diagnostics)
    diags.push_back({{"label", d.label}, {"value", d.value}, {"threshold", d.threshold}, {"pass", d.pass}});
  j["diagnostics"] = diags;
  j["pass"] = rep.all_pass();
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string render(const mc::Report& rep, const Json& config, const std::string& format) {
  std::ostringstream os;
  os.precision(10);
  if (format == "json") {
    os << report_json(rep, config).dump() << '\n';
  } else if (format == "csv") {
    os << "# schema " << kSchema << '\n' << "# config " << config.dump() << '\n' << "# notes " << rep.notes << '\n';
    os << "label,estimate,estimate_imag,std_error,target,sigmas,tolerance,pass\n";
    for (const auto& r : rep.rows)
      os << csv_field(r.label) << ',' << r.estimate.real() << ',' << r.estimate.imag() << ',' << r.std_error << ','
         << r.target << ',' << r.sigmas << ',' << r.tolerance << ',' << (r.pass ? "true" : "false") << '\n';
    for (const auto& d : rep.diagnostics)
      os << csv_field(d.label) << ',' << d.value << ",0,0," << d.threshold << ",0,0," << (d.pass ? "true" : "false")
         << '\n';
  } else {
    os << rep.experiment << ": N = " << rep.N << ", " << rep.samples << " samples, seed " << rep.rng.seed << '\n';
    os << rep.notes << '\n';
    for (const auto& r : rep.rows)
      os << (r.pass ? "  PASS " : "  FAIL ") << r.label << "  estimate " << r.estimate.real() << " se "
         << r.std_error << " target " << r.target << " (" << r.sigmas << " sigma)\n";
    for (const auto& d : rep.diagnostics)
      os << (d.pass ? "  PASS " : "  FAIL ") << d.label << "  " << d.value << '\n';
    os << (rep.all_pass() ? "all rows pass" : "some rows fail") << '\n';
  }
  return os.str();
}

void write_report(const mc::Report& rep, const std::string& sub, McOptions o, const Caps& caps) {
  if (!o.json_path.empty()) {
    o.format = "json";
    o.output = o.json_path;
  }
  const std::string text = render(rep, config_json(sub, o, caps), o.format);
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  detail::require(static_cast<bool>(out), "cannot write output file: " + o.output);
  out << text;
}

const std::vector<std::string> kDefaultWords{"U1", "U2^2", "U1 U2", "U1 U2^-1", "U1^2 U2^-1"};

int fail(int code, const std::string& kind, const std::string& message) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact second order moments of Haar unitary matrices, Weingarten calculus, and Monte Carlo checks."};
  app.require_subcommand(1);
  app.fallthrough();
  Caps caps;
  app.add_option("--nc-cap", caps.nc, "cap on n for non-crossing enumeration")
      ->envname("SOFREE_NC_CAP")
      ->check(CLI::PositiveNumber);
  app.add_option("--wg-cap", caps.weingarten, "cap on n for Weingarten tables (n = 6, 7 are slow)")
      ->envname("SOFREE_WG_CAP")
      ->check(CLI::PositiveNumber);
  app.add_option("--eps-cap", caps.epsilon, "cap on l for sums over S^(eps) with 2l letters")
      ->envname("SOFREE_EPS_CAP")
      ->check(CLI::PositiveNumber);

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "List permutations as JSON lines followed by a count record.");
  enumerate->require_subcommand(1);
  bool count_only = false, as_blocks = false;
  int en_n = 0, en_m = 0;
  std::string en_eps;
  auto add_enum_flags = [&](CLI::App* s) {
    s->add_flag("--count-only", count_only, "print only the count record");
    s->add_flag("--blocks", as_blocks, "print cycles as sorted blocks, fixed points included");
  };
  auto* en_nc = enumerate->add_subcommand(
      "nc", "Non-crossing permutations of [n]: those with #(p) + #(gamma p^-1) = n + 1, gamma = (1 2 ... n).");
  en_nc->add_option("--n", en_n, "size")->required();
  add_enum_flags(en_nc);
  auto* en_snc = enumerate->add_subcommand(
      "snc",
      "Connected annular non-crossing permutations of two circles of sizes m and n: p connecting both circles with "
      "#(p) + #(gamma p^-1) = m + n, gamma = (1..m)(m+1..m+n).");
  en_snc->add_option("--m", en_m, "outer circle size")->required();
  en_snc->add_option("--n", en_n, "inner circle size")->required();
  add_enum_flags(en_snc);
  auto* en_eps_cmd = enumerate->add_subcommand(
      "s-eps",
      "Permutations of the 2l positions that send every + position to a - position and back (the pairings "
      "that carry a Weingarten weight).");
  en_eps_cmd->add_option("--eps", en_eps, "signs, e.g. \"+-+-\" or \"+,-\"")->required();
  add_enum_flags(en_eps_cmd);

  // wg
  auto* wg = app.add_subcommand(
      "wg",
      "Weingarten function of a permutation of the given cycle type: the inverse of the Gram matrix N^#(a b^-1) "
      "over S_n, as an exact rational function of N.");
  int wg_n = 0;
  std::string wg_type;
  std::optional<long> wg_at;
  std::optional<int> wg_series;
  bool wg_text = false;
  wg->add_option("--n", wg_n, "permutation size (defaults to the sum of the cycle type)");
  wg->add_option("--cycle-type", wg_type, "cycle lengths, e.g. 2,1")->required();
  auto* at_opt = wg->add_option("--at", wg_at, "evaluate at this N (N >= n)");
  wg->add_option("--series", wg_series, "expand in 1/N through this many coefficients past the leading one")
      ->excludes(at_opt);
  wg->add_flag("--text", wg_text, "print \"num / den\" instead of JSON");

  // mu, mu2
  auto* mu_cmd = app.add_subcommand(
      "mu", "Leading coefficient of Wg(p) at N^-(n + |p|); multiplicative over cycles, signed Catalan on a cycle.");
  std::string mu_type;
  mu_cmd->add_option("--cycle-type", mu_type, "cycle lengths")->required();
  auto* mu2_cmd = app.add_subcommand(
      "mu2",
      "Second order coefficient: the N^-(|p1| + |p2| + m + n + 2) coefficient of Wg(p1 x p2) - Wg(p1) Wg(p2).");
  std::string mu2_left, mu2_right;
  mu2_cmd->add_option("--left-type", mu2_left, "cycle type of p1")->required();
  mu2_cmd->add_option("--right-type", mu2_right, "cycle type of p2")->required();

  // moment, cumulant
  auto* moment = app.add_subcommand(
      "moment",
      "Exact E of a product of traces of words D_i U^(eps_i): the sum over pairings pi of the U and U* positions "
      "of Wg(N) at the induced permutation times the trace of the D's along the cycles of gamma pi^-1.");
  std::string spec_path;
  long n_value = 0;
  bool use_oracle = false;
  moment->add_option("--spec", spec_path, "JSON file with \"matrices\" and \"groups\"")->required();
  moment->add_option("--N", n_value, "matrix size")->required();
  moment->add_flag("--oracle", use_oracle, "expand entrywise instead (N <= 3, length <= 6)");
  auto* cumulant = app.add_subcommand(
      "cumulant",
      "Exact joint classical cumulant of several trace products, by Moebius inversion of exact moments over set "
      "partitions.");
  cumulant->add_option("--spec", spec_path, "JSON file with \"matrices\" and \"observables\" (lists of groups)")
      ->required();
  cumulant->add_option("--N", n_value, "matrix size")->required();

  // k2-limit, ds
  auto* k2 = app.add_subcommand(
      "k2-limit",
      "Large N limit of the covariance of Tr(left) and Tr(right): annular non-crossing pairings weighted by mu, "
      "plus pairs of disc pairings weighted by mu2 and mu, evaluated on the letters' first and second order "
      "distribution.");
  std::string k2_left, k2_right;
  std::vector<std::string> k2_letters;
  k2->add_option("--left", k2_left, "word such as \"U,U\" or \"B,U,C,U*\"")->required();
  k2->add_option("--right", k2_right, "word")->required();
  k2->add_option("--letter", k2_letters,
                 "NAME=v1,...,vP: a constant diagonal letter repeating this pattern (normalized trace over a period)");
  auto* ds = app.add_subcommand("ds", "Limiting covariance of Tr U^r and Tr U^s: |r| if r = -s, else 0.");
  long ds_r = 0, ds_s = 0;
  ds->add_option("--r", ds_r)->required();
  ds->add_option("--s", ds_s)->required();

  // mc
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo experiments; the report embeds its full configuration.");
  mc_cmd->require_subcommand(1);
  McOptions mo;
  auto add_mc = [&](CLI::App* s) {
    s->add_option("--N", mo.n, "matrix size")->check(CLI::PositiveNumber);
    s->add_option("--samples", mo.samples, "number of samples")->check(CLI::Range(100L, 1000000000L));
    s->add_option("--seed", mo.seed, "seed (default 0)");
    s->add_option("--threads", mo.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    s->add_option("--format", mo.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    s->add_option("--output", mo.output, "write the report here instead of stdout");
    s->add_option("--json", mo.json_path, "shorthand for --format json --output PATH");
  };
  auto* mc_ds = mc_cmd->add_subcommand(
      "ds", "Empirical covariance of Tr U^r, Tr U^s for 0 < |r|, |s| <= max-power against |r| [r = -s].");
  add_mc(mc_ds);
  mc_ds->add_option("--max-power", mo.max_power)->check(CLI::PositiveNumber);
  auto* mc_words = mc_cmd->add_subcommand(
      "words",
      "Traces of cyclically reduced words in independent Haar unitaries: covariances against the number of "
      "matchings of one word with a rotation of the inverse of the other.");
  add_mc(mc_words);
  mc_words->add_option("--word", mo.words, "word such as \"U1 U2^-1\" (repeatable; default five-word suite)");
  auto* mc_cheb = mc_cmd->add_subcommand(
      "chebyshev",
      "GUE: covariance of Tr T_n(A), Tr T_m(A) for Chebyshev polynomials of the first kind on [-2, 2] against "
      "n [n = m]. Only the Gaussian potential is sampled.");
  add_mc(mc_cheb);
  mc_cheb->add_option("--max-degree", mo.max_degree)->check(CLI::PositiveNumber);
  mc_cheb->add_option("--mixed-samples", mo.mixed_samples, "samples for the two-matrix orthonormal check (0 = off)");
  mc_cheb->add_option("--mixed-N", mo.mixed_n, "matrix size for the two-matrix check");
  auto* mc_wg = mc_cmd->add_subcommand(
      "weingarten", "Entrywise Haar moments of degree 2 against Wg(N) on S_2, and E|U_11|^2 against 1/N.");
  add_mc(mc_wg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  try {
    weingarten_cache().set_cap(caps.weingarten);

    if (*enumerate) {
      std::vector<Permutation> perms;
      if (*en_nc) perms = enumerate_nc(en_n, caps.nc);
      else if (*en_snc) perms = enumerate_snc(en_m, en_n, caps.nc);
      else perms = s_epsilon(parse_epsilon(en_eps), caps.epsilon);
      if (!count_only)
        for (const auto& p : perms) emit(permutation_json(p, as_blocks));
      emit({{"count", perms.size()}});
    } else if (*wg) {
      const CycleType type = parse_cycle_type(wg_type);
      int total = 0;
      for (int part : type) total += part;
      if (wg_n == 0) wg_n = total;
      detail::require(wg_n == total, "cycle type does not sum to n");
      const Permutation p = permutation_of_type(type);
      const RationalFunctionN f = weingarten(wg_n, p);
      if (wg_at) {
        emit({{"N", *wg_at}, {"value", rational_json(weingarten_at(p, *wg_at))}});
      } else if (wg_series) {
        const auto s = series(f, *wg_series);
        Json coeffs = Json::array();
        for (const auto& c : s.coeffs) coeffs.push_back(rational_json(c));
        emit({{"offset", s.offset}, {"coeffs", coeffs}});
      } else if (wg_text) {
        std::cout << f.to_string() << '\n';
      } else {
        emit({{"num", polynomial_json(f.numerator())}, {"den", polynomial_json(f.denominator())}});
      }
    } else if (*mu_cmd) {
      emit({{"value", integer_json(mu(permutation_of_type(parse_cycle_type(mu_type))))}});
    } else if (*mu2_cmd) {
      const Permutation p1 = permutation_of_type(parse_cycle_type(mu2_left));
      const Permutation p2 = permutation_of_type(parse_cycle_type(mu2_right));
      emit({{"value", rational_json(mu2(p1, p2))}});
    } else if (*moment) {
      const Json spec = read_json_file(spec_path);
      detail::require(spec.contains("groups"), "spec needs \"groups\"");
      const auto matrices = matrices_of(spec);
      const TraceWordSpec word = groups_of(spec["groups"]);
      const mpq_class v = use_oracle ? entrywise_moment_oracle(word, matrices, n_value)
                                     : exact_mixed_moment(word, matrices, n_value, caps.epsilon);
      emit({{"value", rational_json(v)}});
    } else if (*cumulant) {
      const Json spec = read_json_file(spec_path);
      detail::require(spec.contains("observables") && spec["observables"].is_array() && !spec["observables"].empty(),
                      "spec needs a non-empty \"observables\" array");
      const auto matrices = matrices_of(spec);
      std::vector<TraceWordSpec> observables;
      for (const auto& o : spec["observables"]) observables.push_back(groups_of(o));
      emit({{"r", observables.size()}, {"value", rational_json(exact_cumulant(observables, matrices, n_value))}});
    } else if (*k2) {
      const LetterTable table = parse_letters(k2_letters);
      const TraceWordSpec left = parse_word(k2_left, table);
      const TraceWordSpec right = parse_word(k2_right, table);
      const SecondOrderSpace space =
          table.patterns.empty() ? unit_space() : DiagonalPatternSpace(table.patterns).space();
      emit({{"value", rational_json(limit_k2(left, right, space, caps.epsilon))}});
    } else if (*ds) {
      emit({{"value", ds_covariance(ds_r, ds_s)}});
    } else if (*mc_cmd) {
      const mc::RngConfig rng{mo.seed};
      const int n = static_cast<int>(mo.n);
      if (*mc_ds) {
        write_report(mc::experiment_ds(mo.max_power, n, mo.samples, rng, mo.threads), "ds", mo, caps);
      } else if (*mc_words) {
        if (mo.words.empty()) mo.words = kDefaultWords;
        std::vector<ReducedWord> words;
        for (const auto& w : mo.words) words.push_back(ReducedWord::parse(w));
        write_report(mc::experiment_reduced_words(words, n, mo.samples, rng, mo.threads), "words", mo, caps);
      } else if (*mc_cheb) {
        write_report(mc::experiment_chebyshev(mo.max_degree, n, mo.samples, rng, mo.threads, mo.mixed_samples,
                                              static_cast<int>(mo.mixed_n)),
                     "chebyshev", mo, caps);
      } else {
        write_report(mc::experiment_weingarten(n, mo.samples, rng, mo.threads), "weingarten", mo, caps);
      }
    }
  } catch (const CapExceeded& e) {
    return fail(3, "cap_exceeded", e.what());
  } catch (const InvalidArgument& e) {
    return fail(2, "invalid_argument", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
  return 0;
}
