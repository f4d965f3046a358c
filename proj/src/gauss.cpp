#include "vaform/gauss.hpp"

#include <algorithm>

namespace vaform {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    try {
        Rat r(s);
        r.canonicalize();
        if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("not a rational: '" + s + "'");
    }
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat binomial(const Rat& x, long j) {
    if (j < 0) return Rat(0);
    Rat acc(1);
    for (long l = 0; l < j; ++l) acc *= (x - l) / Rat(l + 1);
    return acc;
}

namespace {

mpz_class pollard_rho(const mpz_class& n, gmp_randclass& rng) {
    if (n % 2 == 0) return 2;
    while (true) {
        mpz_class x = rng.get_z_range(n - 2) + 2;
        mpz_class y = x, c = rng.get_z_range(n - 1) + 1, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(mpz_class n, std::vector<std::pair<mpz_class, int>>& out, gmp_randclass& rng) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 50) != 0) {
        for (auto& [p, e] : out)
            if (p == n) { ++e; return; }
        out.emplace_back(n, 1);
        return;
    }
    mpz_class d = pollard_rho(n, rng);
    factor_into(d, out, rng);
    factor_into(n / d, out, rng);
}

} // namespace

std::vector<mpz_class> divisors(const mpz_class& n) {
    mpz_class m = abs(n);
    if (m == 0) return {};
    std::vector<std::pair<mpz_class, int>> fac;
    // Small primes first; Pollard rho finishes off the cofactor.
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (m % p == 0) {
            m /= p;
            if (!fac.empty() && fac.back().first == p)
                ++fac.back().second;
            else
                fac.emplace_back(p, 1);
        }
    }
    if (m > 1) {
        static gmp_randclass rng(gmp_randinit_default);
        factor_into(m, fac, rng);
    }
    std::vector<mpz_class> divs{1};
    for (auto& [p, e] : fac) {
        std::size_t sz = divs.size();
        mpz_class pw = 1;
        for (int t = 1; t <= e; ++t) {
            pw *= p;
            for (std::size_t r = 0; r < sz; ++r) divs.push_back(divs[r] * pw);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::string GaussRat::str() const {
    if (im == 0) return rat_str(re);
    std::string imag = (im == 1) ? "i" : (im == -1) ? "-i" : rat_str(im) + "*i";
    if (re == 0) return imag;
    if (im > 0) return rat_str(re) + "+" + imag;
    if (im == -1) return rat_str(re) + "-i";
    return rat_str(re) + "-" + rat_str(-im) + "*i";
}

GaussRat parse_gauss(const std::string& s) {
    // Handled by the scalar expression parser; declared here for convenience.
    extern GaussRat parse_gauss_impl(const std::string&);
    return parse_gauss_impl(s);
}

} // namespace vaform
