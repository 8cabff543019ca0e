#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "cogsheaf/errors.hpp"

namespace cogsheaf {

namespace detail {

inline bool is_integer_token(const std::string& s) {
    std::size_t k = 0;
    if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') return false;
    return true;
}

} // namespace detail

/// The field Q of exact rationals.  Values are arbitrary-precision GMP
/// rationals kept canonical (lowest terms, positive denominator) after every
/// operation, so equality of elements is plain equality.
struct RationalField {
    using Elem = mpq_class;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_long(long n) const { return Elem(n); }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }

    Elem div(const Elem& a, const Elem& b) const {
        if (b == 0) throw Error("rational division by zero");
        return a / b;
    }

    Elem inv(const Elem& a) const { return div(one(), a); }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    /// Accepts "n" or "n/d" with optional signs; result is canonical.
    Elem parse(const std::string& s) const {
        const auto slash = s.find('/');
        const std::string num = s.substr(0, slash);
        const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!detail::is_integer_token(num) || !detail::is_integer_token(den))
            throw Error("bad rational literal '" + s + "'");
        const mpz_class numerator(num);
        const mpz_class denominator(den);
        if (denominator == 0) throw Error("zero denominator in '" + s + "'");
        mpq_class q(numerator, denominator);
        q.canonicalize();
        return q;
    }

    std::string str(const Elem& a) const {
        if (a.get_den() == 1) return a.get_num().get_str();
        return a.get_num().get_str() + "/" + a.get_den().get_str();
    }

    std::string name() const { return "Q"; }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
    friend bool operator!=(const RationalField&, const RationalField&) { return false; }
};

/// A prime field F_p with a runtime modulus.  Residues are stored in [0, p).
class PrimeField {
public:
    using Elem = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 2 || !is_prime(p))
            throw InvalidInputError("prime field modulus " + std::to_string(p) + " is not prime");
        if (p >= (std::uint64_t(1) << 31))
            throw InvalidInputError("prime field modulus too large (need p < 2^31)");
    }

    std::uint64_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }

    Elem from_long(long n) const {
        long r = n % static_cast<long>(p_);
        if (r < 0) r += static_cast<long>(p_);
        return static_cast<Elem>(r);
    }

    Elem add(Elem a, Elem b) const { return (a + b) % p_; }
    Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem neg(Elem a) const { return (p_ - a) % p_; }

    Elem inv(Elem a) const {
        if (a == 0) throw Error("inverse of zero in F_" + std::to_string(p_));
        // Fermat: a^(p-2) mod p.
        Elem result = 1, base = a % p_;
        std::uint64_t e = p_ - 2;
        while (e) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem parse(const std::string& s) const {
        if (!detail::is_integer_token(s))
            throw Error("bad residue literal '" + s + "'");
        // Reduce via GMP so arbitrarily long literals are fine.
        mpz_class z(s);
        mpz_class r = z % static_cast<unsigned long>(p_);
        if (r < 0) r += static_cast<unsigned long>(p_);
        return r.get_ui();
    }

    std::string str(Elem a) const { return std::to_string(a); }

    std::string name() const { return "Fp:" + std::to_string(p_); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }
    friend bool operator!=(const PrimeField& a, const PrimeField& b) { return !(a == b); }

private:
    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    std::uint64_t p_;
};

using AnyField = std::variant<RationalField, PrimeField>;

/// Parses a field spec: "Q" or "Fp:p".
inline AnyField parse_field(const std::string& spec) {
    if (spec == "Q") return RationalField{};
    if (spec.rfind("Fp:", 0) == 0) {
        const std::string digits = spec.substr(3);
        if (!detail::is_integer_token(digits) || digits.empty() || digits[0] == '-' || digits[0] == '+')
            throw InvalidInputError("bad field spec '" + spec + "'");
        try {
            return PrimeField(std::stoull(digits));
        } catch (const std::exception&) {
            throw InvalidInputError("bad field spec '" + spec + "'");
        }
    }
    throw InvalidInputError("unknown field spec '" + spec + "' (expected Q or Fp:p)");
}

inline std::string field_name(const AnyField& f) {
    return std::visit([](const auto& ff) { return ff.name(); }, f);
}

} // namespace cogsheaf
