#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <cstdlib>

#include <gmpxx.h>

namespace octwalk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};

inline constexpr std::uint64_t kDefaultPrime = (std::uint64_t(1) << 62) - 57;

// arithmetic in Z/pZ for p < 2^63
struct Zp {
    std::uint64_t p = kDefaultPrime;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t neg(std::uint64_t a) const { return a ? p - a : 0; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return std::uint64_t((unsigned __int128)a * b % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1 % p;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        a %= p;
        if (a == 0) throw Error("inverse of zero mod p");
        // extended Euclid; p is prime so the gcd is 1
        long long t = 0, nt = 1;
        std::uint64_t r = p, nr = a;
        while (nr) {
            std::uint64_t q = r / nr;
            long long tmp = t - (long long)q * nt;
            t = nt;
            nt = tmp;
            std::uint64_t rr = r - q * nr;
            r = nr;
            nr = rr;
        }
        return t < 0 ? std::uint64_t(t + (long long)p) : std::uint64_t(t);
    }
    std::uint64_t from(long long v) const {
        long long m = v % (long long)p;
        return m < 0 ? std::uint64_t(m + (long long)p) : std::uint64_t(m);
    }
    std::uint64_t from(const mpz_class& v) const {
        return mpz_fdiv_ui(v.get_mpz_t(), (unsigned long)p);
    }
    std::uint64_t from(const mpq_class& v) const {
        return mul(from(v.get_num()), inv(from(v.get_den())));
    }
};

inline bool is_probable_prime(std::uint64_t n) {
    mpz_class z(std::to_string(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

inline unsigned worker_count(unsigned requested = 0) {
    if (requested) return requested;
    if (const char* env = std::getenv("OCTWALK_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return unsigned(v);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

inline mpz_class factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
    return r;
}

inline mpz_class binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r;
}

}  // namespace octwalk
