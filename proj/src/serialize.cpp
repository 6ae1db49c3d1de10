#include "qcx/serialize.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace qcx {

Json integer_to_json(const Integer &n) {
    if (n.fits_slong_p())
        return Json(static_cast<std::int64_t>(n.get_si()));
    return Json(n.get_str());
}

Integer integer_from_json(const Json &j) {
    if (j.is_number_integer())
        return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Integer n;
        if (n.set_str(j.get<std::string>(), 10) != 0)
            throw ParseError("invalid integer string \"" + j.get<std::string>() + "\"", 0);
        return n;
    }
    throw ParseError("expected an integer, got " + std::string(j.type_name()), 0);
}

Json quadint_to_json(const QuadInt &x) {
    Json j;
    j["a"] = integer_to_json(x.a());
    j["b"] = integer_to_json(x.b());
    return j;
}

QuadInt quadint_from_json(const RingSpec &ring, const Json &j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b"))
        throw ParseError("element must be an object with \"a\" and \"b\"", 0);
    return QuadInt(ring, integer_from_json(j.at("a")), integer_from_json(j.at("b")));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double display_value(const QuadInt &x) {
    return std::strtod(approx_value(QuadRat(x), 24).c_str(), nullptr);
}

Json point_to_json(const QuadInt &x) {
    Json j = quadint_to_json(x);
    j["value"] = display_value(x);
    j["conj"] = display_value(x.conj());
    return j;
}

QuadInt point_from_json(const RingSpec &ring, const Json &j) { return quadint_from_json(ring, j); }

std::string point_to_csv(const QuadInt &x) {
    return x.a().get_str() + "," + x.b().get_str() + "," + format_double(display_value(x)) + "," +
           format_double(display_value(x.conj()));
}

Json ring_to_json(const RingSpec &ring) {
    Json j;
    j["m"] = ring.m();
    j["sign"] = ring.eps();
    return j;
}

RingSpec ring_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("sign"))
        throw ParseError("ring must be an object with \"m\" and \"sign\"", 0);
    return RingSpec::make(j.at("m").get<int>(), j.at("sign").get<int>());
}

Json node_to_json(const NodePtr &node) {
    Json j;
    if (node->is_leaf()) {
        j["leaf"] = node->leaf;
        return j;
    }
    j["op"] = node->op;
    j["left"] = node_to_json(node->left);
    j["right"] = node_to_json(node->right);
    return j;
}

NodePtr node_from_json(const Json &j) {
    if (!j.is_object())
        throw ParseError("witness node must be an object", 0);
    if (j.contains("leaf")) {
        if (!j.at("leaf").is_number_integer())
            throw ParseError("\"leaf\" must be 0 or 1", 0);
        return make_leaf(j.at("leaf").get<int>());
    }
    if (!j.contains("op") || !j.contains("left") || !j.contains("right") || !j.at("op").is_number_integer())
        throw ParseError("witness node needs \"op\", \"left\" and \"right\"", 0);
    return make_node(j.at("op").get<int>(), node_from_json(j.at("left")), node_from_json(j.at("right")));
}

Json witness_to_json(const Witness &w) {
    Json j;
    j["ring"] = ring_to_json(w.ring());
    Json seeds = Json::array();
    for (const auto &s : w.seeds())
        seeds.push_back(quadint_to_json(s));
    j["seeds"] = std::move(seeds);
    j["offset"] = quadint_to_json(w.offset());
    j["tree"] = node_to_json(w.root());
    return j;
}

Witness witness_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("tree"))
        throw ParseError("witness document needs \"ring\" and \"tree\"", 0);
    const RingSpec ring = ring_from_json(j.at("ring"));
    const QuadInt offset = j.contains("offset") ? quadint_from_json(ring, j.at("offset")) : QuadInt(ring);
    Witness w(ring, node_from_json(j.at("tree")), offset);
    if (j.contains("seeds")) {
        const Json &seeds = j.at("seeds");
        const auto expected = w.seeds();
        if (!seeds.is_array() || seeds.size() != 2 || !(quadint_from_json(ring, seeds[0]) == expected[0]) ||
            !(quadint_from_json(ring, seeds[1]) == expected[1]))
            throw ParseError("seeds must be [offset, offset + 1]", 0);
    }
    return w;
}

// ------------------------------------------------------------------ text

namespace {

// Reads an optionally signed decimal integer starting at pos.
Integer read_integer(std::string_view text, std::size_t &pos, std::size_t base_pos) {
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+'))
        ++pos;
    const std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos == digits)
        throw ParseError("expected a decimal integer", base_pos + start);
    std::string s(text.substr(start, pos - start));
    if (s.front() == '+')
        s.erase(0, 1);
    return Integer(s, 10);
}

QuadInt parse_quadint_at(std::string_view text, const RingSpec &ring, std::size_t base_pos) {
    std::size_t pos = 0;
    Integer a = read_integer(text, pos, base_pos);
    if (pos >= text.size() || text[pos] != ',')
        throw ParseError("expected ',' between coordinates", base_pos + pos);
    ++pos;
    Integer b = read_integer(text, pos, base_pos);
    if (pos != text.size())
        throw ParseError("unexpected trailing input", base_pos + pos);
    return QuadInt(ring, std::move(a), std::move(b));
}

QuadRat parse_quadrat_at(std::string_view text, const RingSpec &ring, std::size_t base_pos) {
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos)
        return QuadRat(parse_quadint_at(text, ring, base_pos));
    QuadInt num = parse_quadint_at(text.substr(0, slash), ring, base_pos);
    std::size_t pos = slash + 1;
    Integer den = read_integer(text, pos, base_pos);
    if (pos != text.size())
        throw ParseError("unexpected trailing input", base_pos + pos);
    if (sgn(den) == 0)
        throw ParseError("zero denominator", base_pos + slash + 1);
    return QuadRat(std::move(num), std::move(den));
}

}  // namespace

QuadInt parse_quadint(std::string_view text, const RingSpec &ring) { return parse_quadint_at(text, ring, 0); }

QuadRat parse_quadrat(std::string_view text, const RingSpec &ring) { return parse_quadrat_at(text, ring, 0); }

Interval parse_interval(std::string_view text, const RingSpec &ring) {
    const std::size_t c1 = text.find(':');
    if (c1 == std::string_view::npos)
        throw ParseError("interval needs the form lo:hi[:cc|co|oc|oo]", text.size());
    const std::size_t c2 = text.find(':', c1 + 1);
    const std::string_view hi_text = text.substr(c1 + 1, c2 == std::string_view::npos ? std::string_view::npos : c2 - c1 - 1);
    QuadRat lo = parse_quadrat_at(text.substr(0, c1), ring, 0);
    QuadRat hi = parse_quadrat_at(hi_text, ring, c1 + 1);
    bool lo_closed = true, hi_closed = true;
    if (c2 != std::string_view::npos) {
        const std::string_view flags = text.substr(c2 + 1);
        if (flags.size() != 2 || (flags[0] != 'o' && flags[0] != 'c') || (flags[1] != 'o' && flags[1] != 'c'))
            throw ParseError("endpoint flags must be one of cc, co, oc, oo", c2 + 1);
        lo_closed = flags[0] == 'c';
        hi_closed = flags[1] == 'c';
    }
    if (lo > hi)
        throw ParseError("interval endpoints out of order", 0);
    if (lo == hi && !(lo_closed && hi_closed))
        throw ParseError("degenerate interval must be closed", c2 == std::string_view::npos ? 0 : c2 + 1);
    return Interval(std::move(lo), std::move(hi), lo_closed, hi_closed);
}

std::vector<QuadInt> parse_quadint_list(std::string_view text, const RingSpec &ring) {
    std::vector<QuadInt> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find(';', start);
        const std::size_t stop = end == std::string_view::npos ? text.size() : end;
        out.push_back(parse_quadint_at(text.substr(start, stop - start), ring, start));
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return out;
}

}  // namespace qcx
