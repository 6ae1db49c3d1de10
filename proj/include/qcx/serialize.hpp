#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qcx/betanum.hpp"
#include "qcx/convexity.hpp"
#include "qcx/modelset.hpp"
#include "qcx/witness.hpp"

namespace qcx {

// Insertion-ordered so emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
Json integer_to_json(const Integer &n);
Integer integer_from_json(const Json &j);

Json quadint_to_json(const QuadInt &x);  // {"a": .., "b": ..}
QuadInt quadint_from_json(const RingSpec &ring, const Json &j);

// 17 significant digits, display only.
std::string format_double(double v);
// Correctly rounded double of an exact element.
double display_value(const QuadInt &x);

// {"a", "b", "value", "conj"}
Json point_to_json(const QuadInt &x);
QuadInt point_from_json(const RingSpec &ring, const Json &j);
inline constexpr std::string_view kPointCsvHeader = "a,b,value,conj";
std::string point_to_csv(const QuadInt &x);

Json ring_to_json(const RingSpec &ring);
RingSpec ring_from_json(const Json &j);

// {"op": i, "left": .., "right": ..} | {"leaf": 0|1}
Json node_to_json(const NodePtr &node);
NodePtr node_from_json(const Json &j);

// {"ring", "seeds", "offset", "tree"}
Json witness_to_json(const Witness &w);
// Throws ParseError for malformed documents.
Witness witness_from_json(const Json &j);

// "a,b" with optionally signed decimal integers.
QuadInt parse_quadint(std::string_view text, const RingSpec &ring);
// "a,b" or "a,b/den"
QuadRat parse_quadrat(std::string_view text, const RingSpec &ring);
// "lo:hi" or "lo:hi:cc|co|oc|oo", each end a QuadRat.
Interval parse_interval(std::string_view text, const RingSpec &ring);
// "a,b;a,b;..."
std::vector<QuadInt> parse_quadint_list(std::string_view text, const RingSpec &ring);

}  // namespace qcx
