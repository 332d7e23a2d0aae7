#include "posmon/cli.hpp"

#include <charconv>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "posmon/counting.hpp"
#include "posmon/io.hpp"
#include "posmon/structure.hpp"

namespace posmon::cli {

namespace {

using io::Json;

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::invalid_input, what); }

enum class Format { text, json, tsv };

std::pair<int, int> parse_uniform(const std::string& s) {
  const auto v = io::parse_values(s);
  if (v.size() != 2) bad("--uniform expects k,n");
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

std::chrono::milliseconds parse_budget(const std::string& s) {
  double value = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || value < 0) bad("invalid budget \"" + s + "\"");
  const std::string unit(end, s.data() + s.size());
  double scale = 1000;
  if (unit == "ms")
    scale = 1;
  else if (unit == "m" || unit == "min")
    scale = 60'000;
  else if (unit == "h")
    scale = 3'600'000;
  else if (!unit.empty() && unit != "s")
    bad("invalid budget unit \"" + unit + "\"");
  return std::chrono::milliseconds(static_cast<std::int64_t>(value * scale));
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void require_format(Format f, bool tsv_ok) {
  if (f == Format::tsv && !tsv_ok) bad("--format tsv is only available for count, table1 and sweep");
}

struct Options {
  Format format = Format::text;
  std::string input;
  std::string second_input;
  std::string uniform;
  std::string function;
  std::string budget;
  unsigned threads = 1;
  bool no_cache = false;
  bool stretch = false;
  int max_n = 5;
  int sweep_n = 3;
  std::uint64_t prime = 0;
};

io::PosetSource load_poset_source(const Options& o) {
  if (!o.uniform.empty()) {
    if (!o.input.empty()) bad("give either an input file or --uniform, not both");
    auto [k, n] = parse_uniform(o.uniform);
    Matroid m = uniform(k, n);
    Poset p = slice_poset(m);
    return {std::move(p), std::move(m)};
  }
  if (o.input.empty()) bad("missing input file");
  return io::poset_source_from_json(io::read_json_file(o.input));
}

Matroid load_valid_matroid(const std::string& path) {
  Matroid m = io::matroid_from_json(io::read_json_file(path));
  if (auto v = validate_matroid(m); !v.empty())
    bad("not a matroid: " + v.front().axiom + " violated, " + v.front().message);
  return m;
}

Json sets_json(const Poset& p, const std::vector<UpperSet>& sets) {
  Json out = Json::array();
  for (UpperSet u : sets) out.push_back(p.labels_of(u.members));
  return out;
}

CountOptions count_options(const Options& o) {
  CountOptions c;
  c.threads = o.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.threads;
  if (!o.budget.empty()) c.budget = parse_budget(o.budget);
  return c;
}

int cmd_irreducibles(const Options& o, std::ostream& out) {
  require_format(o.format, false);
  const Poset p = load_poset_source(o).poset;
  const auto irr = enumerate_irreducible_upper_sets(p);
  if (o.format == Format::json) {
    print_json(out, {{"elements", p.labels()}, {"irreducibles", sets_json(p, irr)}, {"count", irr.size()}});
  } else {
    for (UpperSet u : irr) out << p.format_set(u.members) << '\n';
  }
  return exit_ok;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  require_format(o.format, false);
  const Poset p = load_poset_source(o).poset;
  const auto f = MonotoneFunction::make(p, io::parse_values(o.function));
  const auto e = near_chain_decompose(f);
  if (o.format == Format::json) {
    print_json(out, {{"elements", p.labels()},
                     {"function", std::vector<std::uint64_t>(f.values().begin(), f.values().end())},
                     {"terms", io::expr_json(p, e.terms())}});
  } else {
    out << io::expr_text(p, e.terms()) << '\n';
  }
  return exit_ok;
}

int cmd_presentation(const Options& o, std::ostream& out) {
  require_format(o.format, false);
  const Poset p = load_poset_source(o).poset;
  const auto rels = presentation(p);
  if (o.format == Format::json)
    print_json(out, io::presentation_json(p, rels));
  else
    out << io::presentation_text(p, rels);
  return exit_ok;
}

int cmd_groebner(const Options& o, std::ostream& out) {
  require_format(o.format, false);
  const Poset p = load_poset_source(o).poset;
  const auto gb = groebner_basis(p);
  if (o.format == Format::json)
    print_json(out, io::groebner_json(p, gb));
  else
    out << io::groebner_text(p, gb);
  return exit_ok;
}

int cmd_cone(const Options& o, std::ostream& out) {
  require_format(o.format, false);
  const Poset p = load_poset_source(o).poset;
  const auto c = cone_description(p);
  if (o.format == Format::json) {
    print_json(out, io::cone_json(p, c));
    return exit_ok;
  }
  out << "rays\n";
  for (UpperSet u : c.rays) out << "  " << io::format_tuple(p, u) << '\n';
  out << "facets\n";
  for (const auto& f : c.facets) {
    if (f.kind == Facet::Kind::nonneg)
      out << "  f(" << p.label(f.x) << ") >= 0\n";
    else
      out << "  f(" << p.label(f.y) << ") - f(" << p.label(f.x) << ") >= 0\n";
  }
  return exit_ok;
}

int cmd_gorenstein(const Options& o, std::ostream& out) {
  require_format(o.format, false);
  const Poset p = load_poset_source(o).poset;
  const auto lf = level_function(p);
  if (o.format == Format::json) {
    Json j = {{"gorenstein", lf.has_value()}, {"level_function", nullptr}};
    if (lf) j["level_function"] = lf->values;
    print_json(out, j);
  } else {
    out << (lf ? "true" : "false") << '\n';
  }
  return exit_ok;
}

int cmd_type(const Options& o, std::ostream& out) {
  require_format(o.format, false);
  const Poset p = load_poset_source(o).poset;
  const auto g = interior_minimal_generators(p);
  if (o.format == Format::json)
    print_json(out, io::interior_json(p, g));
  else
    out << g.generators.size() << '\n';
  return exit_ok;
}

int cmd_primes(const Options& o, std::ostream& out) {
  require_format(o.format, false);
  const Poset p = load_poset_source(o).poset;
  const auto pr = primes(p);
  if (o.format == Format::json) {
    print_json(out, {{"elements", p.labels()}, {"primes", sets_json(p, pr)}});
  } else if (pr.empty()) {
    out << "{}\n";
  } else {
    for (UpperSet u : pr) out << p.format_set(u.members) << '\n';
  }
  return exit_ok;
}

int cmd_validate_matroid(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o.format, false);
  const Matroid m = io::matroid_from_json(io::read_json_file(o.input));
  const auto v = validate_matroid(m);
  if (!v.empty()) {
    err << "error: not a matroid: " << v.front().axiom << " violated, " << v.front().message << '\n';
    if (o.format == Format::json) {
      Json list = Json::array();
      for (const auto& x : v)
        list.push_back({{"axiom", x.axiom}, {"x", subset_key(x.x)}, {"y", subset_key(x.y)}, {"message", x.message}});
      print_json(out, {{"valid", false}, {"violations", list}});
    }
    return exit_input;
  }
  Json bs = Json::array();
  for (Mask b : bases(m)) bs.push_back(subset_key(b));
  if (o.format == Format::json)
    print_json(out, {{"valid", true}, {"n", m.n}, {"rank", m.rank()}, {"bases", bs}});
  else
    out << "valid matroid on " << m.n << " elements, rank " << m.rank() << ", " << bs.size() << " bases\n";
  return exit_ok;
}

int cmd_check_axioms(const Options& o, std::ostream& out) {
  require_format(o.format, false);
  const Matroid m = load_valid_matroid(o.input);
  const auto mult = io::multiplicity_from_json(io::read_json_file(o.second_input));
  if (mult.n != m.n) throw Error(Errc::size_mismatch, "matroid and multiplicity have different ground sets");
  const bool a1 = check_a1(m, mult), a2 = check_a2(m, mult), pp = check_p(m, mult);
  if (o.format == Format::json) {
    print_json(out, {{"A1", a1}, {"A2", a2}, {"P", pp}});
  } else {
    out << "A1 " << (a1 ? "true" : "false") << '\n'
        << "A2 " << (a2 ? "true" : "false") << '\n'
        << "P " << (pp ? "true" : "false") << '\n';
  }
  return exit_ok;
}

int cmd_slice(const Options& o, std::ostream& out) {
  require_format(o.format, false);
  const auto mult = io::multiplicity_from_json(io::read_json_file(o.input));
  const auto s = p_slice(mult, o.prime);
  if (o.format == Format::json) {
    print_json(out, io::sliced_to_json(mult.n, s));
  } else {
    for (std::size_t a = 0; a < s.values.size(); ++a) out << subset_label(a) << ' ' << s.values[a] << '\n';
  }
  return exit_ok;
}

int cmd_count(const Options& o, std::ostream& out, std::ostream& err) {
  const CountOptions copts = count_options(o);
  CountResult r;
  int n = -1, k = -1;
  if (!o.uniform.empty() && o.input.empty()) {
    std::tie(k, n) = parse_uniform(o.uniform);
    (void)uniform(k, n);
    std::optional<ResultCache> cache;
    if (!o.no_cache) cache.emplace(ResultCache::default_dir());
    r = count_uniform_cached(k, n, copts, cache ? &*cache : nullptr);
  } else {
    const auto src = load_poset_source(o);
    r = count_irreducibles(src.poset, copts, o.input);
  }
  if (r.timed_out) {
    err << "error: count of " << r.descriptor << " exceeded the budget of " << o.budget << '\n';
    return exit_aborted;
  }
  if (o.format == Format::json) {
    Json j = io::count_json(r);
    if (n >= 0) {
      j["n"] = n;
      j["k"] = k;
    }
    print_json(out, j);
  } else if (o.format == Format::tsv) {
    out << "n\tk\tcount\tmillis\tmethod\n"
        << (n >= 0 ? std::to_string(n) : "") << '\t' << (k >= 0 ? std::to_string(k) : "") << '\t' << r.count
        << '\t' << r.elapsed.count() << '\t' << r.method << '\n';
  } else {
    out << r.count << '\n';
  }
  return exit_ok;
}

int cmd_table1(const Options& o, std::ostream& out) {
  Table1Options t;
  t.count = count_options(o);
  t.include_stretch = o.stretch;
  std::optional<ResultCache> cache;
  if (!o.no_cache) cache.emplace(ResultCache::default_dir());
  t.cache = cache ? &*cache : nullptr;
  const auto rows = table1(o.max_n, t);
  if (o.format == Format::json) {
    print_json(out, io::table_json(rows));
  } else if (o.format == Format::tsv) {
    out << io::table_tsv(rows);
  } else {
    int current = -1;
    for (const auto& e : rows) {
      if (e.n != current) {
        if (current >= 0) out << '\n';
        out << "n=" << e.n << ':';
        current = e.n;
      }
      out << ' ';
      if (!e.result || e.skipped)
        out << '-';
      else if (e.result->timed_out)
        out << "timeout";
      else
        out << e.result->count;
    }
    out << '\n';
  }
  return exit_ok;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const auto rep = conjecture_sweep(o.sweep_n);
  if (o.format == Format::json) {
    Json rows = Json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"rank", r.rank}, {"uniform", r.is_uniform}, {"count", std::to_string(r.count)},
                      {"matroid", io::matroid_to_json(r.matroid)}});
    Json per = Json::array();
    for (const auto& p : rep.per_rank)
      per.push_back({{"rank", p.rank}, {"max_count", std::to_string(p.max_count)},
                     {"uniform_count", std::to_string(p.uniform_count)}, {"uniform_attains_max", p.uniform_attains_max}});
    print_json(out, {{"n", rep.n},
                     {"matroids", rows},
                     {"per_rank", per},
                     {"max_uniform", std::to_string(rep.max_uniform)},
                     {"middle_uniform", std::to_string(rep.middle_uniform)},
                     {"middle_uniform_is_max_uniform", rep.middle_uniform_is_max_uniform},
                     {"max_overall", std::to_string(rep.max_overall)},
                     {"middle_uniform_is_max_overall", rep.middle_uniform_is_max_overall}});
  } else if (o.format == Format::tsv) {
    out << "rank\tmax_count\tuniform_count\tuniform_attains_max\n";
    for (const auto& p : rep.per_rank)
      out << p.rank << '\t' << p.max_count << '\t' << p.uniform_count << '\t' << (p.uniform_attains_max ? "yes" : "no")
          << '\n';
  } else {
    out << rep.rows.size() << " matroids on " << rep.n << " elements\n";
    for (const auto& p : rep.per_rank)
      out << "rank " << p.rank << ": max " << p.max_count << ", U(" << p.rank << "," << rep.n << ") "
          << p.uniform_count << (p.uniform_attains_max ? " (attains max)" : " (below max)") << '\n';
    out << "U(" << rep.n / 2 << "," << rep.n << ") = " << rep.middle_uniform << "; max over uniform "
        << rep.max_uniform << "; max over all " << rep.max_overall << '\n';
  }
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotone-function monoids on posets and matroid multiplicities", "posmon"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options o;
  app.add_option_function<std::string>(
         "--format",
         [&](const std::string& s) {
           o.format = s == "json" ? Format::json : s == "tsv" ? Format::tsv : Format::text;
         },
         "Output format")
      ->check(CLI::IsMember({"text", "json", "tsv"}).description(""))
      ->type_name("text|json|tsv");

  auto poset_cmd = [&](const char* name, const char* help, bool matroid_ok) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("input", o.input, matroid_ok ? "poset.json or matroid.json" : "poset.json");
    if (matroid_ok) c->add_option("--uniform", o.uniform, "Use the slice poset of U(k,n), given as k,n");
    return c;
  };

  auto* irreducibles = poset_cmd("irreducibles", "List the irreducible upper sets", true);
  auto* decompose = poset_cmd("decompose", "Near-chain decomposition of a monotone function", true);
  decompose->add_option("--function", o.function, "Values in element order, comma separated")->required();
  auto* presentation_c = poset_cmd("presentation", "Defining relations of the monoid", true);
  auto* groebner = poset_cmd("groebner", "Groebner basis of the defining ideal", true);
  auto* cone = poset_cmd("cone", "Extremal rays and facets of the cone", true);
  auto* gorenstein = poset_cmd("gorenstein", "Whether the monoid is Gorenstein", true);
  auto* type = poset_cmd("type", "Cohen-Macaulay type", true);
  auto* primes_c = poset_cmd("primes", "Prime elements", true);

  auto* validate = app.add_subcommand("validate-matroid", "Check the rank axioms");
  validate->add_option("matroid", o.input, "matroid.json")->required();

  auto* axioms = app.add_subcommand("check-axioms", "Check A1, A2 and P for a multiplicity");
  axioms->add_option("matroid", o.input, "matroid.json")->required();
  axioms->add_option("multiplicity", o.second_input, "multiplicity.json")->required();

  auto* slice = app.add_subcommand("slice", "p-adic valuation of a multiplicity");
  slice->add_option("multiplicity", o.input, "multiplicity.json")->required();
  slice->add_option("-p,--prime", o.prime, "Prime")->required();

  auto* count = poset_cmd("count", "Count irreducible upper sets", true);
  auto* table = app.add_subcommand("table1", "Irreducible counts for U(k,n)");
  table->add_option("--max-n", o.max_n, "Largest ground set")->check(CLI::Range(1, 6));
  table->add_flag("--stretch", o.stretch, "Also compute n = 6, k = 2, 3, 4");
  for (auto* c : {count, table}) {
    c->add_option("--budget", o.budget, "Time budget per count, e.g. 60s or 5m");
    c->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
    c->add_flag("--no-cache", o.no_cache, "Bypass the results cache");
  }
  auto* sweep = app.add_subcommand("sweep", "Irreducible counts over all matroids on n elements");
  sweep->add_option("--n", o.sweep_n, "Ground set size")->check(CLI::Range(0, 3));

  std::vector<const char*> argv{"posmon"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (irreducibles->parsed()) return cmd_irreducibles(o, out);
    if (decompose->parsed()) return cmd_decompose(o, out);
    if (presentation_c->parsed()) return cmd_presentation(o, out);
    if (groebner->parsed()) return cmd_groebner(o, out);
    if (cone->parsed()) return cmd_cone(o, out);
    if (gorenstein->parsed()) return cmd_gorenstein(o, out);
    if (type->parsed()) return cmd_type(o, out);
    if (primes_c->parsed()) return cmd_primes(o, out);
    if (validate->parsed()) return cmd_validate_matroid(o, out, err);
    if (axioms->parsed()) return cmd_check_axioms(o, out);
    if (slice->parsed()) return cmd_slice(o, out);
    if (count->parsed()) return cmd_count(o, out, err);
    if (table->parsed()) return cmd_table1(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::search_bound_exceeded || e.code() == Errc::timeout ? exit_aborted : exit_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_input;
  }
  return exit_input;
}

}  // namespace posmon::cli
