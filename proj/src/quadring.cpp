#include "qcx/quadring.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace qcx {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotFinite: return "NotFinite";
    case Errc::NonPositive: return "NonPositive";
    case Errc::DigitOutOfRange: return "DigitOutOfRange";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::ParameterNotAdmissible: return "ParameterNotAdmissible";
    case Errc::MissingSeeds: return "MissingSeeds";
    case Errc::ChainBroken: return "ChainBroken";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::OutOfWindow: return "OutOfWindow";
    case Errc::NotInRing: return "NotInRing";
    case Errc::NoRewriteAvailable: return "NoRewriteAvailable";
    case Errc::MixedParameters: return "MixedParameters";
    case Errc::DepthTooSmall: return "DepthTooSmall";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

// ---------------------------------------------------------------- RingSpec

RingSpec RingSpec::make(int m, int eps) {
    if (eps != 1 && eps != -1)
        throw Error(Errc::InvalidArgument, "sign must be +1 or -1, got " + std::to_string(eps));
    if (m > 1'000'000)
        throw Error(Errc::OutOfRange, "m = " + std::to_string(m) + " exceeds the supported bound 10^6");
    if (eps > 0 && m < 1)
        throw Error(Errc::OutOfRange, "x^2 = mx + 1 requires m >= 1, got m = " + std::to_string(m));
    if (eps < 0 && m == 3)
        throw Error(Errc::OutOfRange,
                    "x^2 = 3x - 1 generates the same ring Z[beta] as x^2 = x + 1; use m = 1, sign +");
    if (eps < 0 && m < 4)
        throw Error(Errc::OutOfRange, "x^2 = mx - 1 requires m >= 4, got m = " + std::to_string(m));

    const long disc = static_cast<long>(m) * m + 4L * eps;
    const double beta = (m + std::sqrt(static_cast<double>(disc))) / 2.0;
    return RingSpec(m, eps, disc, beta);
}

std::string RingSpec::name() const {
    return "(" + std::to_string(m_) + "," + (eps_ > 0 ? "+1" : "-1") + ")";
}

std::ostream &operator<<(std::ostream &os, const RingSpec &ring) { return os << ring.name(); }

void require_same_ring(const RingSpec &x, const RingSpec &y) {
    if (!(x == y))
        throw Error(Errc::RingMismatch, "operands live in rings " + x.name() + " and " + y.name());
}

// ----------------------------------------------------------------- QuadInt

QuadInt QuadInt::inv_beta(const RingSpec &ring) {
    if (ring.eps() > 0)
        return QuadInt(ring, -ring.m(), 1);
    return QuadInt(ring, ring.m(), -1);
}

QuadInt QuadInt::conj() const { return QuadInt(ring_, a_ + b_ * ring_.m(), -b_); }

Integer QuadInt::norm() const {
    Integer n = a_ * a_ + ring_.m() * a_ * b_;
    if (ring_.eps() > 0)
        n -= b_ * b_;
    else
        n += b_ * b_;
    return n;
}

Integer QuadInt::trace() const { return 2 * a_ + ring_.m() * b_; }

bool QuadInt::is_unit() const {
    const Integer n = norm();
    return n == 1 || n == -1;
}

int QuadInt::sign() const {
    // a + b*beta = (p + b*sqrt(D)) / 2 with p = 2a + bm.
    const int sb = sgn(b_);
    if (sb == 0)
        return sgn(a_);
    const Integer p = 2 * a_ + ring_.m() * b_;
    const int sp = sgn(p);
    if (sp >= 0 && sb > 0)
        return 1;
    if (sp <= 0 && sb < 0)
        return -1;
    // Opposite signs: compare p^2 with b^2 D, never equal since D is not a square.
    const Integer lhs = p * p;
    const Integer rhs = b_ * b_ * ring_.discriminant();
    const int c = cmp(lhs, rhs);
    return sp > 0 ? c : -c;
}

QuadInt QuadInt::pow(unsigned long e) const {
    QuadInt result(ring_, 1, 0);
    QuadInt base = *this;
    while (e != 0) {
        if (e & 1UL)
            result *= base;
        e >>= 1;
        if (e != 0)
            base *= base;
    }
    return result;
}

QuadInt QuadInt::beta_shift(long k) const {
    if (k == 0)
        return *this;
    if (k > 0)
        return *this * beta(ring_).pow(static_cast<unsigned long>(k));
    return *this * inv_beta(ring_).pow(static_cast<unsigned long>(-k));
}

double QuadInt::to_double() const {
    const double sqrt_d = std::sqrt(static_cast<double>(ring_.discriminant()));
    const Integer p = 2 * a_ + ring_.m() * b_;
    return (p.get_d() + b_.get_d() * sqrt_d) / 2.0;
}

std::string QuadInt::to_pair_string() const { return a_.get_str() + "," + b_.get_str(); }

QuadInt operator+(const QuadInt &x, const QuadInt &y) {
    require_same_ring(x.ring_, y.ring_);
    return QuadInt(x.ring_, x.a_ + y.a_, x.b_ + y.b_);
}

QuadInt operator-(const QuadInt &x, const QuadInt &y) {
    require_same_ring(x.ring_, y.ring_);
    return QuadInt(x.ring_, x.a_ - y.a_, x.b_ - y.b_);
}

QuadInt operator*(const QuadInt &x, const QuadInt &y) {
    require_same_ring(x.ring_, y.ring_);
    // beta^2 = m beta + eps
    const Integer bd = x.b_ * y.b_;
    Integer a = x.a_ * y.a_;
    if (x.ring_.eps() > 0)
        a += bd;
    else
        a -= bd;
    Integer b = x.a_ * y.b_ + x.b_ * y.a_ + x.ring_.m() * bd;
    return QuadInt(x.ring_, std::move(a), std::move(b));
}

std::strong_ordering operator<=>(const QuadInt &x, const QuadInt &y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

// 0, 3, β, -2β, 1+β, 2-3β
std::ostream &operator<<(std::ostream &os, const QuadInt &x) {
    const int sb = sgn(x.b());
    if (sb == 0)
        return os << x.a().get_str();
    if (sgn(x.a()) != 0)
        os << x.a().get_str() << (sb > 0 ? "+" : "-");
    else if (sb < 0)
        os << "-";
    const Integer mag = abs(x.b());
    if (mag != 1)
        os << mag.get_str();
    return os << "β";
}

std::size_t QuadIntHash::operator()(const QuadInt &x) const noexcept {
    auto limb_hash = [](const Integer &v) -> std::size_t {
        const mpz_srcptr p = v.get_mpz_t();
        std::size_t h = static_cast<std::size_t>(mpz_size(p) == 0 ? 0 : mpz_getlimbn(p, 0));
        h ^= static_cast<std::size_t>(p->_mp_size) * 0x9e3779b97f4a7c15ULL;
        return h;
    };
    std::size_t h = limb_hash(x.a());
    h ^= limb_hash(x.b()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::optional<QuadInt> divides(const QuadInt &d, const QuadInt &x) {
    require_same_ring(d.ring(), x.ring());
    if (d.is_zero())
        throw Error(Errc::DivisionByZero, "divisor is zero");
    const Integer n = d.norm();
    const QuadInt p = x * d.conj();
    if (!mpz_divisible_p(p.a().get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(p.b().get_mpz_t(), n.get_mpz_t()))
        return std::nullopt;
    Integer qa, qb;
    mpz_divexact(qa.get_mpz_t(), p.a().get_mpz_t(), n.get_mpz_t());
    mpz_divexact(qb.get_mpz_t(), p.b().get_mpz_t(), n.get_mpz_t());
    return QuadInt(d.ring(), std::move(qa), std::move(qb));
}

// ----------------------------------------------------------------- QuadRat

QuadRat::QuadRat(QuadInt num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
    if (sgn(den_) == 0)
        throw Error(Errc::DivisionByZero, "zero denominator");
    if (sgn(den_) < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), num_.a().get_mpz_t(), num_.b().get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        num_ = QuadInt(num_.ring(), num_.a() / g, num_.b() / g);
        den_ /= g;
    }
}

const QuadInt &QuadRat::as_quadint() const {
    if (den_ != 1)
        throw Error(Errc::NotInRing, "element has denominator " + den_.get_str());
    return num_;
}

double QuadRat::to_double() const { return num_.to_double() / den_.get_d(); }

QuadRat operator+(const QuadRat &x, const QuadRat &y) {
    if (x.den_ == y.den_)
        return QuadRat(x.num_ + y.num_, x.den_);
    return QuadRat(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

QuadRat operator-(const QuadRat &x, const QuadRat &y) {
    if (x.den_ == y.den_)
        return QuadRat(x.num_ - y.num_, x.den_);
    return QuadRat(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
}

QuadRat operator*(const QuadRat &x, const QuadRat &y) {
    return QuadRat(x.num_ * y.num_, x.den_ * y.den_);
}

QuadRat operator/(const QuadRat &x, const QuadRat &y) {
    require_same_ring(x.ring(), y.ring());
    if (y.is_zero())
        throw Error(Errc::DivisionByZero, "division by zero element");
    // x / y = x.num * y.den * conj(y.num) / (x.den * N(y.num))
    return QuadRat(x.num_ * y.num_.conj() * y.den_, x.den_ * y.num_.norm());
}

std::strong_ordering operator<=>(const QuadRat &x, const QuadRat &y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream &operator<<(std::ostream &os, const QuadRat &x) {
    os << x.num();
    if (x.den() != 1)
        os << "/" << x.den().get_str();
    return os;
}

namespace {

// floor((p + b sqrt(D)) / (2 den)) with floor(b sqrt(D)) from an integer square root.
Integer floor_by_isqrt(const QuadRat &x) {
    const QuadInt &n = x.num();
    const Integer p = 2 * n.a() + n.ring().m() * n.b();
    Integer r;
    if (sgn(n.b()) != 0) {
        const Integer sq = n.b() * n.b() * n.ring().discriminant();
        mpz_sqrt(r.get_mpz_t(), sq.get_mpz_t());
        if (sgn(n.b()) < 0)
            r = -r - 1;
    }
    const Integer num = p + r;
    const Integer den = 2 * x.den();
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

// sign of x - k
int sign_minus(const QuadRat &x, const Integer &k) { return (x.num() - k * x.den()).sign(); }

}  // namespace

Integer floor_of(const QuadRat &x) {
    const double approx = x.to_double();
    if (std::isfinite(approx) && std::fabs(approx) < 0x1p52) {
        Integer n(std::floor(approx));
        for (int step = 0; step < 4; ++step) {
            if (sign_minus(x, n) < 0) {
                n -= 1;
            } else if (sign_minus(x, n + 1) >= 0) {
                n += 1;
            } else {
                return n;
            }
        }
    }
    return floor_by_isqrt(x);
}

Integer QuadRat::floor() const { return floor_of(*this); }

Integer QuadRat::ceil() const {
    Integer n = floor_of(*this);
    if (sign_minus(*this, n) != 0)
        n += 1;
    return n;
}

std::string approx_value(const QuadRat &x, int digits) {
    if (digits < 1)
        throw Error(Errc::InvalidArgument, "digits must be >= 1");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const bool negative = x.sign() < 0;
    const QuadRat magnitude = negative ? -x : x;
    const Integer scaled = floor_of(magnitude * QuadRat(QuadInt(x.ring(), scale)));
    std::string s = scaled.get_str();
    if (s.size() <= static_cast<std::size_t>(digits))
        s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return negative ? "-" + s : s;
}

}  // namespace qcx
