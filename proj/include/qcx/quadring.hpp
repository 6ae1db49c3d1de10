#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "qcx/error.hpp"

namespace qcx {

/**
 * Parameters of a quadratic unitary Pisot ring Z[beta], where beta > 1 is the
 * dominant root of x^2 = m x + eps with eps = +1 or -1.
 *
 * The conjugate root is beta' = m - beta and beta * beta' = -eps, so beta is a
 * unit. For eps = -1 we require m >= 4: m = 3 yields the same ring as the
 * golden ratio and is rejected.
 */
class RingSpec {
public:
    static RingSpec make(int m, int eps);

    int m() const noexcept { return m_; }
    int eps() const noexcept { return eps_; }

    // m^2 + 4 eps
    long discriminant() const noexcept { return disc_; }
    double beta_float() const noexcept { return beta_; }
    double conj_beta_float() const noexcept { return m_ - beta_; }

    // [beta]: m for eps = +1, m - 1 for eps = -1. Also the largest digit.
    int floor_beta() const noexcept { return eps_ > 0 ? m_ : m_ - 1; }

    // Number of operations needed to generate [0,1] ∩ Z[beta]:
    // [(m+1)/2] for eps = +1 and [(m-1)/2] for eps = -1.
    int reduced_op_count() const noexcept { return eps_ > 0 ? (m_ + 1) / 2 : (m_ - 1) / 2; }

    std::string name() const;

    friend bool operator==(const RingSpec &x, const RingSpec &y) noexcept {
        return x.m_ == y.m_ && x.eps_ == y.eps_;
    }

private:
    RingSpec(int m, int eps, long disc, double beta) : m_(m), eps_(eps), disc_(disc), beta_(beta) {}

    int m_;
    int eps_;
    long disc_;
    double beta_;
};

std::ostream &operator<<(std::ostream &os, const RingSpec &ring);

void require_same_ring(const RingSpec &x, const RingSpec &y);

/**
 * Exact element a + b*beta of Z[beta]. Since beta is irrational the pair
 * (a, b) is unique, so equality is structural and agrees with value equality.
 * Ordering compares real values exactly.
 */
class QuadInt {
public:
    explicit QuadInt(const RingSpec &ring, Integer a = 0, Integer b = 0)
        : ring_(ring), a_(std::move(a)), b_(std::move(b)) {}

    static QuadInt beta(const RingSpec &ring) { return QuadInt(ring, 0, 1); }
    static QuadInt conj_beta(const RingSpec &ring) { return QuadInt(ring, ring.m(), -1); }
    // 1/beta: beta - m for eps = +1, m - beta for eps = -1.
    static QuadInt inv_beta(const RingSpec &ring);

    const RingSpec &ring() const noexcept { return ring_; }
    const Integer &a() const noexcept { return a_; }
    const Integer &b() const noexcept { return b_; }

    bool is_zero() const noexcept { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_integer() const noexcept { return sgn(b_) == 0; }

    QuadInt conj() const;
    Integer norm() const;
    Integer trace() const;
    bool is_unit() const;

    // Exact sign of a + b*beta using integer arithmetic only.
    int sign() const;

    // Exact x * beta^k for any integer k.
    QuadInt beta_shift(long k) const;

    QuadInt pow(unsigned long e) const;

    double to_double() const;

    // "a,b"
    std::string to_pair_string() const;

    friend QuadInt operator+(const QuadInt &x, const QuadInt &y);
    friend QuadInt operator-(const QuadInt &x, const QuadInt &y);
    friend QuadInt operator*(const QuadInt &x, const QuadInt &y);
    friend QuadInt operator-(const QuadInt &x) { return QuadInt(x.ring_, -x.a_, -x.b_); }

    friend QuadInt operator+(const QuadInt &x, const Integer &n) { return QuadInt(x.ring_, x.a_ + n, x.b_); }
    friend QuadInt operator-(const QuadInt &x, const Integer &n) { return QuadInt(x.ring_, x.a_ - n, x.b_); }
    friend QuadInt operator*(const QuadInt &x, const Integer &n) { return QuadInt(x.ring_, x.a_ * n, x.b_ * n); }
    friend QuadInt operator*(const Integer &n, const QuadInt &x) { return x * n; }

    QuadInt &operator+=(const QuadInt &y) { return *this = *this + y; }
    QuadInt &operator-=(const QuadInt &y) { return *this = *this - y; }
    QuadInt &operator*=(const QuadInt &y) { return *this = *this * y; }

    friend bool operator==(const QuadInt &x, const QuadInt &y) {
        return x.ring_ == y.ring_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    // Throws RingMismatch for elements of different rings.
    friend std::strong_ordering operator<=>(const QuadInt &x, const QuadInt &y);

private:
    RingSpec ring_;
    Integer a_;
    Integer b_;
};

std::ostream &operator<<(std::ostream &os, const QuadInt &x);

struct QuadIntHash {
    std::size_t operator()(const QuadInt &x) const noexcept;
};

/**
 * Element num/den of Q(beta) in canonical form: den > 0 and
 * gcd(num.a, num.b, den) = 1, so equality is structural.
 */
class QuadRat {
public:
    QuadRat(const QuadInt &num) : num_(num), den_(1) {}  // NOLINT(google-explicit-constructor)
    QuadRat(QuadInt num, Integer den);
    explicit QuadRat(const RingSpec &ring, Integer a = 0, Integer b = 0, Integer den = 1)
        : QuadRat(QuadInt(ring, std::move(a), std::move(b)), std::move(den)) {}

    const RingSpec &ring() const noexcept { return num_.ring(); }
    const QuadInt &num() const noexcept { return num_; }
    const Integer &den() const noexcept { return den_; }

    bool is_integral() const { return den_ == 1; }
    // Throws NotInRing unless den == 1.
    const QuadInt &as_quadint() const;

    QuadRat conj() const { return QuadRat(num_.conj(), den_); }
    int sign() const { return num_.sign(); }
    bool is_zero() const { return num_.is_zero(); }

    // The unique n with n <= x < n + 1.
    Integer floor() const;
    Integer ceil() const;

    double to_double() const;

    friend QuadRat operator+(const QuadRat &x, const QuadRat &y);
    friend QuadRat operator-(const QuadRat &x, const QuadRat &y);
    friend QuadRat operator*(const QuadRat &x, const QuadRat &y);
    // Throws DivisionByZero.
    friend QuadRat operator/(const QuadRat &x, const QuadRat &y);
    friend QuadRat operator-(const QuadRat &x) { return QuadRat(-x.num_, x.den_); }

    friend bool operator==(const QuadRat &x, const QuadRat &y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend std::strong_ordering operator<=>(const QuadRat &x, const QuadRat &y);

private:
    QuadInt num_;
    Integer den_;
};

std::ostream &operator<<(std::ostream &os, const QuadRat &x);

// Quotient q with q * d == x when one exists in Z[beta]. Throws DivisionByZero for d == 0.
std::optional<QuadInt> divides(const QuadInt &d, const QuadInt &x);

// floor of an element, certified by two exact sign evaluations.
Integer floor_of(const QuadRat &x);

// Decimal rendering truncated toward zero to the requested number of fractional digits.
std::string approx_value(const QuadRat &x, int digits);

}  // namespace qcx
