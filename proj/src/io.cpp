#include "posmon/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace posmon::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::invalid_input, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

BigInt to_bigint(const Json& v, const std::string& where) {
  if (v.is_number_unsigned()) return BigInt(v.get<std::uint64_t>());
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    const bool neg = !s.empty() && s[0] == '-';
    const std::size_t start = neg ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      bad(where + ": \"" + s + "\" is not a decimal integer");
    return BigInt(s);
  }
  bad(where + ": expected an integer or a decimal string");
}

long long to_int(const Json& v, const std::string& where) {
  const BigInt b = to_bigint(v, where);
  if (b > 1'000'000'000 || b < -1'000'000'000) bad(where + ": value out of range");
  return static_cast<long long>(b);
}

Json set_json(const Poset& p, Mask s) { return p.labels_of(s); }

std::string join_vars(const Poset& p, const std::vector<UpperSet>& parts) {
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) s += '*';
    s += variable_name(p, parts[k]);
  }
  return s;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

Poset poset_from_json(const Json& j) {
  const Json& elems = field(j, "elements");
  if (!elems.is_array()) bad("\"elements\" must be an array of strings");
  std::vector<std::string> labels;
  for (const auto& e : elems) {
    if (!e.is_string()) bad("\"elements\" must be an array of strings");
    labels.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  if (auto it = j.find("relations"); it != j.end()) {
    if (!it->is_array()) bad("\"relations\" must be an array of pairs");
    for (const auto& r : *it) {
      if (!r.is_array() || r.size() != 2 || !r[0].is_string() || !r[1].is_string())
        bad("each relation must be a pair of element names");
      pairs.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
    }
  }
  return Poset::from_relations(std::move(labels), pairs);
}

Json poset_to_json(const Poset& p) {
  Json rel = Json::array();
  for (auto [x, y] : p.covers()) rel.push_back({p.label(x), p.label(y)});
  return {{"elements", p.labels()}, {"relations", rel}};
}

Matroid matroid_from_json(const Json& j) {
  const Json& type = field(j, "type");
  if (!type.is_string()) bad("\"type\" must be a string");
  const int n = static_cast<int>(to_int(field(j, "n"), "n"));
  if (n < 0) bad("n must be nonnegative");
  if (type == "uniform") {
    const int r = static_cast<int>(to_int(field(j, "r"), "r"));
    return uniform(r, n);
  }
  if (type != "rank_table") bad("unknown matroid type \"" + type.get<std::string>() + "\"");
  if (n > max_ground_set)
    throw Error(Errc::ground_set_too_large, "ground set of size " + std::to_string(n) + ", at most 6 supported");
  const Json& ranks = field(j, "ranks");
  if (!ranks.is_object()) bad("\"ranks\" must be an object keyed by subsets");
  const std::size_t size = std::size_t{1} << n;
  std::vector<int> table(size, 0);
  std::vector<bool> seen(size, false);
  for (const auto& [key, v] : ranks.items()) {
    const Mask a = parse_subset_key(key, n);
    if (seen[a]) bad("subset \"" + key + "\" given twice");
    seen[a] = true;
    table[a] = static_cast<int>(to_int(v, "rank of \"" + key + "\""));
  }
  for (std::size_t a = 0; a < size; ++a)
    if (!seen[a]) bad("rank of \"" + subset_key(a) + "\" missing");
  return Matroid::from_ranks(n, std::move(table));
}

Json matroid_to_json(const Matroid& m) {
  Json ranks = Json::object();
  for (std::size_t a = 0; a < m.ranks.size(); ++a) ranks[subset_key(a)] = m.ranks[a];
  return {{"type", "rank_table"}, {"n", m.n}, {"ranks", ranks}};
}

MultiplicityFunction multiplicity_from_json(const Json& j) {
  const int n = static_cast<int>(to_int(field(j, "n"), "n"));
  if (n < 0 || n > max_ground_set)
    throw Error(Errc::ground_set_too_large, "ground set of size " + std::to_string(n) + ", at most 6 supported");
  const Json& vals = field(j, "values");
  if (!vals.is_object()) bad("\"values\" must be an object keyed by subsets");
  const std::size_t size = std::size_t{1} << n;
  std::vector<BigInt> values(size);
  std::vector<bool> seen(size, false);
  for (const auto& [key, v] : vals.items()) {
    const Mask a = parse_subset_key(key, n);
    if (seen[a]) bad("subset \"" + key + "\" given twice");
    seen[a] = true;
    values[a] = to_bigint(v, "value of \"" + key + "\"");
  }
  for (std::size_t a = 0; a < size; ++a)
    if (!seen[a]) bad("value of \"" + subset_key(a) + "\" missing");
  return MultiplicityFunction::from_values(n, std::move(values));
}

Json multiplicity_to_json(const MultiplicityFunction& m) {
  Json vals = Json::object();
  for (std::size_t a = 0; a < m.values.size(); ++a) vals[subset_key(a)] = m.values[a].str();
  return {{"n", m.n}, {"values", vals}};
}

Json sliced_to_json(int n, const SlicedMultiplicity& s) {
  Json vals = Json::object();
  for (std::size_t a = 0; a < s.values.size(); ++a) vals[subset_key(a)] = std::to_string(s.values[a]);
  return {{"n", n}, {"p", std::to_string(s.prime)}, {"values", vals}};
}

PosetSource poset_source_from_json(const Json& j) {
  if (j.is_object() && j.contains("elements")) return {poset_from_json(j), std::nullopt};
  if (j.is_object() && j.contains("type")) {
    Matroid m = matroid_from_json(j);
    if (auto v = validate_matroid(m); !v.empty())
      bad("not a matroid: " + v.front().axiom + " violated, " + v.front().message);
    Poset p = slice_poset(m);
    return {std::move(p), std::move(m)};
  }
  bad("expected a poset (\"elements\") or a matroid (\"type\")");
}

std::vector<std::uint64_t> parse_values(std::string_view csv) {
  std::vector<std::uint64_t> out;
  if (csv.empty()) return out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = csv.find(',', pos);
    std::string_view tok = csv.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size())
      bad("\"" + std::string(tok) + "\" is not a natural number");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_tuple(std::span<const std::uint64_t> values) {
  std::string s = "(";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(values[k]);
  }
  return s + ")";
}

std::string format_tuple(const Poset& p, UpperSet u) {
  std::vector<std::uint64_t> v(static_cast<std::size_t>(p.size()));
  for_each_bit(u.members, [&](int x) { v[x] = 1; });
  return format_tuple(v);
}

std::string variable_name(const Poset& p, UpperSet u) {
  std::string s = "x_{";
  bool first = true;
  for (const auto& l : p.labels_of(u.members)) {
    if (!first) s += ',';
    s += l;
    first = false;
  }
  return s + "}";
}

std::vector<UpperSet> relation_rhs(const Poset& p, UpperSet i, UpperSet j) {
  auto out = decompose_upper_set(p, i.members | j.members);
  for (UpperSet u : decompose_upper_set(p, i.members & j.members)) out.push_back(u);
  return out;
}

std::string groebner_text(const Poset& p, const GroebnerBasis& gb) {
  std::string s = "# term order: degree with deg x_I = |I|, ties broken by revlex over the generator order\n";
  s += "# generators:";
  for (std::size_t k = 0; k < gb.generators.size(); ++k)
    s += (k ? " < " : " ") + variable_name(p, gb.generators[k]);
  s += '\n';
  for (const auto& b : gb.binomials)
    s += variable_name(p, b.i) + "*" + variable_name(p, b.j) + " - " + join_vars(p, relation_rhs(p, b.i, b.j)) + "\n";
  return s;
}

Json groebner_json(const Poset& p, const GroebnerBasis& gb) {
  Json gens = Json::array();
  for (UpperSet u : gb.generators) gens.push_back(set_json(p, u.members));
  Json bins = Json::array();
  for (const auto& b : gb.binomials) {
    Json rhs = Json::array();
    for (UpperSet u : relation_rhs(p, b.i, b.j)) rhs.push_back(set_json(p, u.members));
    bins.push_back({{"lead", {set_json(p, b.i.members), set_json(p, b.j.members)}}, {"tail", rhs}});
  }
  return {{"elements", p.labels()},
          {"term_order", {{"degree", "cardinality"}, {"tie_break", "revlex over generators"}}},
          {"generators", gens},
          {"binomials", bins}};
}

std::string presentation_text(const Poset& p, const std::vector<Relation>& rels) {
  std::string s;
  for (const auto& r : rels) {
    std::vector<UpperSet> lhs;
    for (const auto& [u, c] : r.lhs.terms())
      for (std::uint64_t k = 0; k < c; ++k) lhs.push_back(u);
    s += format_tuple(p, lhs.at(0));
    for (std::size_t k = 1; k < lhs.size(); ++k) s += "+" + format_tuple(p, lhs[k]);
    s += "=";
    const auto rhs = relation_rhs(p, lhs.at(0), lhs.at(lhs.size() - 1));
    for (std::size_t k = 0; k < rhs.size(); ++k) s += (k ? "+" : "") + format_tuple(p, rhs[k]);
    s += '\n';
  }
  return s;
}

Json presentation_json(const Poset& p, const std::vector<Relation>& rels) {
  Json out = Json::array();
  for (const auto& r : rels) out.push_back({{"lhs", expr_json(p, r.lhs.terms())}, {"rhs", expr_json(p, r.rhs.terms())}});
  return {{"elements", p.labels()}, {"relations", out}};
}

Json cone_json(const Poset& p, const ConeDescription& c) {
  Json rays = Json::array();
  for (UpperSet u : c.rays) rays.push_back(ray_vector(p, u));
  Json facets = Json::array();
  for (const auto& f : c.facets) {
    if (f.kind == Facet::Kind::nonneg)
      facets.push_back({{"kind", "nonneg"}, {"x", p.label(f.x)}});
    else
      facets.push_back({{"kind", "cover"}, {"x", p.label(f.x)}, {"y", p.label(f.y)}});
  }
  return {{"elements", p.labels()}, {"rays", rays}, {"facets", facets}};
}

Json interior_json(const Poset& p, const InteriorGenerators& g) {
  Json gens = Json::array();
  for (const auto& f : g.generators) gens.push_back(std::vector<std::uint64_t>(f.values().begin(), f.values().end()));
  return {{"elements", p.labels()}, {"generators", gens}, {"type", g.generators.size()}};
}

std::string expr_text(const Poset& p, const Terms& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [u, c] : terms) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c) + "*" + p.format_set(u.members);
  }
  return s;
}

Json expr_json(const Poset& p, const Terms& terms) {
  Json out = Json::array();
  for (const auto& [u, c] : terms) out.push_back({{"set", set_json(p, u.members)}, {"coefficient", c}});
  return out;
}

Json count_json(const CountResult& r) {
  return {{"descriptor", r.descriptor},
          {"count", std::to_string(r.count)},
          {"millis", r.elapsed.count()},
          {"method", r.method},
          {"timed_out", r.timed_out}};
}

std::string table_tsv(const std::vector<Table1Entry>& rows) {
  std::string s = "n\tk\tcount\tmillis\tmethod\n";
  for (const auto& e : rows) {
    s += std::to_string(e.n) + "\t" + std::to_string(e.k) + "\t";
    if (e.skipped || !e.result) {
      s += "skipped\t\t\n";
      continue;
    }
    const auto& r = *e.result;
    const std::string method = e.by_duality ? "duality" : r.method;
    s += (r.timed_out ? std::string("timeout") : std::to_string(r.count)) + "\t" +
         std::to_string(e.by_duality ? 0 : r.elapsed.count()) + "\t" + method + "\n";
  }
  return s;
}

Json table_json(const std::vector<Table1Entry>& rows) {
  Json out = Json::array();
  for (const auto& e : rows) {
    Json j = {{"n", e.n}, {"k", e.k}, {"by_duality", e.by_duality}, {"skipped", e.skipped}};
    if (e.result) j["result"] = count_json(*e.result);
    out.push_back(j);
  }
  return out;
}

}  // namespace posmon::io
