#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace essx {

// All arithmetic in this library is exact; Int never overflows.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

// Representative of a mod m in [0, m); requires m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

struct Egcd {
    Int g;  // gcd(a, b) >= 0
    Int x;  // a*x + b*y = g
    Int y;
};

Egcd egcd(Int a, Int b);

// Inverse of a modulo m (m >= 1); empty when gcd(a, m) != 1.
std::optional<Int> mod_inverse(const Int& a, const Int& m);

// Prime factorization of n >= 1 by trial division (desk scale).
std::vector<std::pair<Int, unsigned>> factorize(Int n);

// All positive divisors of n >= 1, ascending.
std::vector<Int> divisors_of(const Int& n);

// Largest divisor of d >= 1 coprime to n.
Int coprime_part(Int d, const Int& n);

long long checked_ll(const Int& v);

std::string int_str(const Int& v);

}  // namespace essx
