#include "qcx/betanum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace qcx {

DigitString::DigitString(const RingSpec &ring, long top, std::vector<int> digits)
    : ring_(ring), top_(top), digits_(std::move(digits)) {
    for (const int d : digits_) {
        if (d < 0 || d > ring_.floor_beta())
            throw Error(Errc::DigitOutOfRange, "digit " + std::to_string(d) + " outside 0.." +
                                                   std::to_string(ring_.floor_beta()));
    }
    const auto first = std::find_if(digits_.begin(), digits_.end(), [](int d) { return d != 0; });
    top_ -= static_cast<long>(first - digits_.begin());
    digits_.erase(digits_.begin(), first);
    while (!digits_.empty() && digits_.back() == 0)
        digits_.pop_back();
    if (digits_.empty())
        top_ = 0;
}

int DigitString::digit_at(long k) const noexcept {
    if (digits_.empty() || k > top_ || k < bottom())
        return 0;
    return digits_[static_cast<std::size_t>(top_ - k)];
}

std::string DigitString::to_string() const {
    if (digits_.empty())
        return "0";
    const bool spaced = ring_.floor_beta() > 9;
    const long hi = std::max(top_, 0L);
    const long lo = std::min(bottom(), 0L);
    std::string out;
    for (long k = hi; k >= lo; --k) {
        if (k == -1)
            out += spaced ? " ." : ".";
        if (spaced && !out.empty())
            out += ' ';
        out += std::to_string(digit_at(k));
    }
    return out;
}

DigitString DigitString::parse(const RingSpec &ring, std::string_view text) {
    std::vector<int> digits;
    long point = -1;  // number of digits before the point
    const bool spaced = text.find(' ') != std::string_view::npos;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ') {
            ++i;
            continue;
        }
        if (c == '.') {
            if (point >= 0)
                throw ParseError("second radix point in digit string", i);
            point = static_cast<long>(digits.size());
            ++i;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError(std::string("unexpected character '") + c + "' in digit string", i);
        if (spaced) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            digits.push_back(std::stoi(std::string(text.substr(i, j - i))));
            i = j;
        } else {
            digits.push_back(c - '0');
            ++i;
        }
    }
    if (digits.empty())
        throw ParseError("empty digit string", 0);
    if (point < 0)
        point = static_cast<long>(digits.size());
    return DigitString(ring, point - 1, std::move(digits));
}

RenyiRep renyi_rep_of_one(const RingSpec &ring) {
    if (ring.eps() > 0)
        return {{ring.m(), 1}, {}};
    return {{ring.m() - 1}, {ring.m() - 2}};
}

DigitString expand_greedy(const QuadInt &x, int max_depth) {
    if (max_depth < 1)
        throw Error(Errc::InvalidArgument, "max_depth must be >= 1");
    if (x.sign() <= 0)
        throw Error(Errc::NonPositive, "greedy expansion needs x > 0");
    const RingSpec &ring = x.ring();
    const QuadInt beta = QuadInt::beta(ring);

    // Leading exponent k with beta^k <= x < beta^(k+1), seeded from a float estimate.
    long k = 0;
    const double approx = x.to_double();
    if (std::isfinite(approx) && approx > 0)
        k = static_cast<long>(std::floor(std::log(approx) / std::log(ring.beta_float())));
    QuadInt r = x.beta_shift(-k);
    for (;;) {
        if (r.sign() < 0 || (r - Integer(1)).sign() < 0) {
            --k;
            r = r * beta;
        } else if ((r - beta).sign() >= 0) {
            ++k;
            r = r * QuadInt::inv_beta(ring);
        } else {
            break;
        }
    }

    std::vector<int> digits;
    for (;;) {
        const Integer d = floor_of(QuadRat(r));
        digits.push_back(static_cast<int>(d.get_si()));
        r = r - d;
        if (r.is_zero())
            break;
        if (static_cast<int>(digits.size()) >= max_depth)
            throw NotFiniteError("expansion of " + x.to_pair_string() + " not finite within " +
                                     std::to_string(max_depth) + " digits, N(x) = " +
                                     x.norm().get_str(),
                                 x.norm());
        r = r * beta;
    }
    return DigitString(ring, k, std::move(digits));
}

SignedExpansion expand_signed(const QuadInt &x, int max_depth) {
    const int s = x.sign();
    if (s == 0)
        return {false, DigitString(x.ring())};
    return {s < 0, expand_greedy(s < 0 ? -x : x, max_depth)};
}

bool is_admissible(const DigitString &d) {
    const auto &digits = d.digits();
    const int m = d.ring().m();
    const std::size_t n = digits.size();
    if (d.ring().eps() > 0) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (digits[i] == m && digits[i + 1] != 0)
                return false;
        }
        return true;
    }
    // Compare every suffix with (m-1)(m-2)(m-2)...; a suffix that matches up to
    // its end continues with zeros and is therefore strictly smaller.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; i + j < n; ++j) {
            const int ref = j == 0 ? m - 1 : m - 2;
            const int cur = digits[i + j];
            if (cur < ref)
                break;
            if (cur > ref)
                return false;
        }
    }
    return true;
}

bool is_admissible(const RingSpec &ring, const std::vector<int> &digits) {
    return is_admissible(DigitString(ring, static_cast<long>(digits.size()) - 1, digits));
}

QuadInt evaluate(const DigitString &d) {
    const RingSpec &ring = d.ring();
    if (d.empty())
        return QuadInt(ring);
    // Horner from the most significant digit, then shift to the bottom exponent.
    QuadInt acc(ring);
    const QuadInt beta = QuadInt::beta(ring);
    for (const int digit : d.digits())
        acc = acc * beta + Integer(digit);
    return acc.beta_shift(d.bottom());
}

QuadInt evaluate(const SignedExpansion &e) {
    const QuadInt v = evaluate(e.magnitude);
    return e.negative ? -v : v;
}

bool in_fin(const QuadInt &x) {
    if (x.ring().eps() > 0)
        return true;
    return sgn(x.norm()) >= 0;
}

int compare_aligned(const DigitString &x, const DigitString &y) {
    require_same_ring(x.ring(), y.ring());
    if (x.empty() || y.empty())
        return x.empty() == y.empty() ? 0 : (x.empty() ? -1 : 1);
    const long hi = std::max(x.top(), y.top());
    const long lo = std::min(x.bottom(), y.bottom());
    for (long k = hi; k >= lo; --k) {
        const int a = x.digit_at(k);
        const int b = y.digit_at(k);
        if (a != b)
            return a < b ? -1 : 1;
    }
    return 0;
}

}  // namespace qcx
