#include "singkit/field.hpp"

namespace singkit {

namespace {

constexpr std::int64_t kSmallLimit = std::int64_t{1} << 62;

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
        unsigned __int128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

mpz_class mpz_from128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::uint64_t words[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
    mpz_class z;
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
    if (neg) z = -z;
    return z;
}

bool fits_small(const mpz_class& z) {
    return mpz_sizeinbase(z.get_mpz_t(), 2) <= 62;
}

std::int64_t pow_mod(std::int64_t b, std::uint64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
        throw std::invalid_argument("field modulus " + std::to_string(p) + " is not a prime below 2^31");
    return FieldSpec{static_cast<std::uint32_t>(p)};
}

std::string FieldSpec::name() const {
    return characteristic == 0 ? "Q" : "F" + std::to_string(characteristic);
}

Scalar::Scalar(const FieldSpec& f, long long v) : p_(f.characteristic) {
    if (p_) {
        std::int64_t m = v % static_cast<std::int64_t>(p_);
        num_ = m < 0 ? m + p_ : m;
    } else if (v > -kSmallLimit && v < kSmallLimit) {
        num_ = v;
    } else {
        big_ = std::make_unique<mpq_class>(mpz_from128(v));
        num_ = 1;
    }
}

Scalar::Scalar(const FieldSpec& f, const mpq_class& q) : p_(f.characteristic) {
    if (p_) {
        mpz_class n = q.get_num() % p_, d = q.get_den() % p_;
        if (n < 0) n += p_;
        if (d == 0) throw std::domain_error("denominator divisible by the characteristic");
        num_ = n.get_si() * pow_mod(d.get_si(), p_ - 2, p_) % p_;
    } else {
        *this = from_mpq(0, q);
    }
}

Scalar::Scalar(const Scalar& o)
    : p_(o.p_), num_(o.num_), den_(o.den_), big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}

Scalar& Scalar::operator=(const Scalar& o) {
    if (this != &o) {
        p_ = o.p_;
        num_ = o.num_;
        den_ = o.den_;
        big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
}

std::uint32_t Scalar::join(const Scalar& o) const {
    if (p_ && o.p_ && p_ != o.p_) throw std::invalid_argument("scalars from different fields");
    return p_ ? p_ : o.p_;
}

Scalar Scalar::from_wide(std::uint32_t p, __int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    unsigned __int128 un = n < 0 ? static_cast<unsigned __int128>(-n) : static_cast<unsigned __int128>(n);
    unsigned __int128 g = gcd128(un, static_cast<unsigned __int128>(d));
    if (g > 1) {
        n /= static_cast<__int128>(g);
        d /= static_cast<__int128>(g);
    }
    Scalar r;
    r.p_ = p;
    if (n == 0) return r;
    if (n > -kSmallLimit && n < kSmallLimit && d < kSmallLimit) {
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    mpq_class q(mpz_from128(n), mpz_from128(d));
    r.big_ = std::make_unique<mpq_class>(std::move(q));
    r.num_ = 1;
    return r;
}

Scalar Scalar::from_mpq(std::uint32_t p, mpq_class q) {
    q.canonicalize();
    Scalar r;
    r.p_ = p;
    if (fits_small(q.get_num()) && fits_small(q.get_den())) {
        r.num_ = q.get_num().get_si();
        r.den_ = q.get_den().get_si();
    } else {
        r.big_ = std::make_unique<mpq_class>(std::move(q));
        r.num_ = 1;
    }
    return r;
}

mpq_class Scalar::to_rational() const {
    if (big_) return *big_;
    return mpq_class(mpz_from128(num_), mpz_from128(den_));
}

Scalar Scalar::operator+(const Scalar& o) const {
    std::uint32_t p = join(o);
    if (p) {
        Scalar r;
        r.p_ = p;
        r.num_ = (num_ + o.num_) % p;
        return r;
    }
    if (big_ || o.big_) return from_mpq(0, to_rational() + o.to_rational());
    if (den_ == o.den_) return from_wide(0, static_cast<__int128>(num_) + o.num_, den_);
    return from_wide(0, static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                     static_cast<__int128>(den_) * o.den_);
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    if (p_) {
        r.num_ = num_ ? p_ - num_ : 0;
    } else if (big_) {
        *r.big_ = -*big_;
    } else {
        r.num_ = -num_;
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    std::uint32_t p = join(o);
    if (p) {
        Scalar r;
        r.p_ = p;
        r.num_ = num_ * o.num_ % p;
        return r;
    }
    if (big_ || o.big_) return from_mpq(0, to_rational() * o.to_rational());
    if (num_ == 0 || o.num_ == 0) return Scalar();
    return from_wide(0, static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (p_) {
        Scalar r;
        r.p_ = p_;
        r.num_ = pow_mod(num_, p_ - 2, p_);
        return r;
    }
    if (big_) return from_mpq(0, 1 / *big_);
    return from_wide(0, den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    if (big_ || o.big_) {
        if (!big_ || !o.big_) return false;
        return *big_ == *o.big_;
    }
    return num_ == o.num_ && den_ == o.den_;
}

std::string Scalar::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace singkit
