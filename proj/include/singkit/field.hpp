#ifndef SINGKIT_FIELD_HPP
#define SINGKIT_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace singkit {

// Base field: characteristic 0 means the rationals.
struct FieldSpec {
    std::uint32_t characteristic = 0;

    static FieldSpec rationals() { return FieldSpec{}; }
    // Throws std::invalid_argument unless p is a prime below 2^31.
    static FieldSpec prime(std::uint64_t p);

    bool is_rational() const { return characteristic == 0; }
    std::string name() const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.characteristic == b.characteristic; }
};

bool is_prime(std::uint64_t n);

// Exact element of Q or F_p. Rationals stay in a 64-bit fraction while they fit
// and move to GMP otherwise; F_p elements are least residues.
class Scalar {
public:
    Scalar() = default;
    Scalar(const FieldSpec& f, long long v);
    Scalar(const FieldSpec& f, const mpq_class& q);
    Scalar(const Scalar& o);
    Scalar(Scalar&&) noexcept = default;
    Scalar& operator=(const Scalar& o);
    Scalar& operator=(Scalar&&) noexcept = default;
    ~Scalar() = default;

    static Scalar zero(const FieldSpec& f) { return Scalar(f, 0); }
    static Scalar one(const FieldSpec& f) { return Scalar(f, 1); }

    FieldSpec field() const { return FieldSpec{p_}; }
    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    mpq_class to_rational() const;
    std::string str() const;

private:
    std::uint32_t p_ = 0;
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;

    static Scalar from_wide(std::uint32_t p, __int128 n, __int128 d);
    static Scalar from_mpq(std::uint32_t p, mpq_class q);
    std::uint32_t join(const Scalar& o) const;
};

}  // namespace singkit

#endif
