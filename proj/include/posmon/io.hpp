#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "posmon/counting.hpp"
#include "posmon/matroid.hpp"
#include "posmon/monoid.hpp"
#include "posmon/poset.hpp"
#include "posmon/structure.hpp"

namespace posmon::io {

using Json = nlohmann::json;

/// Parses text as JSON; throws Error(invalid_input) with the parser message.
Json parse_json(std::string_view text);
Json read_json_file(const std::string& path);

/// {"elements": [...], "relations": [["x","y"], ...]} with x < y.
Poset poset_from_json(const Json& j);
Json poset_to_json(const Poset& p);

/// {"type":"uniform","r":2,"n":4} or
/// {"type":"rank_table","n":2,"ranks":{"":0,"a":1,...}}. Numbers may be
/// JSON integers or decimal strings. The axioms are not checked here.
Matroid matroid_from_json(const Json& j);
Json matroid_to_json(const Matroid& m);

/// {"n":2,"values":{"":"1","a":"2",...}}; every subset must be present.
MultiplicityFunction multiplicity_from_json(const Json& j);
Json multiplicity_to_json(const MultiplicityFunction& m);
Json sliced_to_json(int n, const SlicedMultiplicity& s);

/// A poset file, or a matroid file routed through slice_poset.
struct PosetSource {
  Poset poset;
  std::optional<Matroid> matroid;
};
PosetSource poset_source_from_json(const Json& j);

/// "1,1,2,2" in element order.
std::vector<std::uint64_t> parse_values(std::string_view csv);
/// "(1,0,1,1)".
std::string format_tuple(std::span<const std::uint64_t> values);
std::string format_tuple(const Poset& p, UpperSet u);

/// x_{a,c,d}
std::string variable_name(const Poset& p, UpperSet u);

/// Components of I u J followed by components of I n J.
std::vector<UpperSet> relation_rhs(const Poset& p, UpperSet i, UpperSet j);

std::string groebner_text(const Poset& p, const GroebnerBasis& gb);
Json groebner_json(const Poset& p, const GroebnerBasis& gb);

std::string presentation_text(const Poset& p, const std::vector<Relation>& rels);
Json presentation_json(const Poset& p, const std::vector<Relation>& rels);

Json cone_json(const Poset& p, const ConeDescription& c);
Json interior_json(const Poset& p, const InteriorGenerators& g);

std::string expr_text(const Poset& p, const Terms& terms);
Json expr_json(const Poset& p, const Terms& terms);

Json count_json(const CountResult& r);

/// Columns n, k, count, millis, method. Timed-out counts print "timeout",
/// skipped entries "skipped".
std::string table_tsv(const std::vector<Table1Entry>& rows);
Json table_json(const std::vector<Table1Entry>& rows);

}  // namespace posmon::io
