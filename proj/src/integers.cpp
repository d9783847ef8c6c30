#include "essx/integers.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace essx {

Egcd egcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

std::optional<Int> mod_inverse(const Int& a, const Int& m) {
    if (m == 1) return Int(0);
    Egcd e = egcd(mod_floor(a, m), m);
    if (e.g != 1) return std::nullopt;
    return mod_floor(e.x, m);
}

std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<std::pair<Int, unsigned>> out;
    Int p = 2;
    while (p * p <= n) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (n > 1) out.emplace_back(n, 1u);
    return out;
}

std::vector<Int> divisors_of(const Int& n) {
    if (n < 1) throw std::invalid_argument("divisors_of: n must be >= 1");
    std::vector<Int> divs{1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t sz = divs.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

Int coprime_part(Int d, const Int& n) {
    if (d < 1) throw std::invalid_argument("coprime_part: d must be >= 1");
    Int m = abs_int(n);
    while (true) {
        Int g = gcd_int(d, m);
        if (g == 1) return d;
        while (d % g == 0) d /= g;
        if (d == 1) return d;
        m = g;
    }
}

long long checked_ll(const Int& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer too large for long long");
    return v.convert_to<long long>();
}

std::string int_str(const Int& v) { return v.str(); }

}  // namespace essx
