#include "signrace/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "signrace/errors.hpp"

namespace signrace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    if (n < 2) return out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.emplace_back(p, k);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t euler_phi(std::int64_t n) {
    if (n < 1) return 0;
    std::int64_t phi = n;
    for (auto [p, k] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

double von_mangoldt(std::int64_t n) {
    if (n < 2) return 0.0;
    auto f = factorize(n);
    return f.size() == 1 ? std::log(static_cast<double>(f[0].first)) : 0.0;
}

std::int64_t count_square_roots_of_unity(std::int64_t q) {
    if (q < 1) throw DomainError("count_square_roots_of_unity: q must be >= 1");
    std::int64_t f = 1;
    for (auto [p, k] : factorize(q)) {
        if (p != 2) {
            f *= 2;
        } else if (k == 2) {
            f *= 2;
        } else if (k >= 3) {
            f *= 4;
        }
    }
    return f;
}

namespace {

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % m);
        b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

std::int64_t least_primitive_root(std::int64_t p, std::int64_t pk) {
    const std::int64_t order = pk / p * (p - 1);
    const auto primes = factorize(order);
    for (std::int64_t g = 2; g < pk; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto [r, unused] : primes) {
            if (powmod(g, order / r, pk) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    return 1;  // pk == 2
}

// One cyclic factor of the unit group, with discrete logs over Z/(p^k).
struct Component {
    std::int64_t prime_power;
    std::int64_t order;
    std::vector<std::int64_t> log;  // indexed by residue mod prime_power, -1 off units
};

}  // namespace

CharacterTable CharacterTable::build(std::int64_t q) {
    if (q < 3) throw DomainError("build_characters: q must be >= 3, got " + std::to_string(q));
    const std::int64_t phi = euler_phi(q);
    if (phi > kMaxOrder) {
        throw CapacityError("build_characters: phi(q) = " + std::to_string(phi) +
                            " exceeds capacity " + std::to_string(kMaxOrder));
    }

    std::vector<Component> comps;
    for (auto [p, k] : factorize(q)) {
        std::int64_t pk = 1;
        for (int i = 0; i < k; ++i) pk *= p;
        if (p == 2) {
            if (k == 1) continue;
            // <-1>
            Component minus{pk, 2, std::vector<std::int64_t>(pk, -1)};
            Component five{pk, pk / 4, std::vector<std::int64_t>(pk, -1)};
            std::int64_t v = 1;
            for (std::int64_t e = 0; e < pk / 4; ++e) {
                minus.log[v] = 0;
                minus.log[pk - v] = 1;
                five.log[v] = e;
                five.log[pk - v] = e;
                v = v * 5 % pk;
            }
            comps.push_back(std::move(minus));
            if (k >= 3) comps.push_back(std::move(five));
        } else {
            const std::int64_t g = least_primitive_root(p, pk);
            const std::int64_t order = pk / p * (p - 1);
            Component c{pk, order, std::vector<std::int64_t>(pk, -1)};
            std::int64_t v = 1;
            for (std::int64_t e = 0; e < order; ++e) {
                c.log[v] = e;
                v = v * g % pk;
            }
            comps.push_back(std::move(c));
        }
    }

    CharacterTable t;
    t.q_ = q;
    t.phi_ = phi;
    for (const auto& c : comps) {
        t.orders_.push_back(c.order);
        t.exponent_ = std::lcm(t.exponent_, c.order);
    }
    for (const auto& c : comps) t.scale_.push_back(t.exponent_ / c.order);

    const std::size_t nc = comps.size();
    t.dlog_.assign(static_cast<std::size_t>(q) * nc, -1);
    t.unit_index_.assign(static_cast<std::size_t>(q), -1);
    for (std::int64_t r = 0; r < q; ++r) {
        if (gcd64(r, q) != 1) continue;
        t.unit_index_[r] = static_cast<int>(t.units_.size());
        t.units_.push_back(r);
        for (std::size_t j = 0; j < nc; ++j) {
            t.dlog_[r * nc + j] = comps[j].log[r % comps[j].prime_power];
        }
    }

    t.roots_.resize(static_cast<std::size_t>(t.exponent_));
    for (std::int64_t m = 0; m < t.exponent_; ++m) {
        // Pin the exact rational points so that conjugate phases give exact conjugates.
        if (4 * m == 0) {
            t.roots_[m] = {1.0, 0.0};
        } else if (2 * m == t.exponent_) {
            t.roots_[m] = {-1.0, 0.0};
        } else if (4 * m == t.exponent_) {
            t.roots_[m] = {0.0, 1.0};
        } else if (4 * m == 3 * t.exponent_) {
            t.roots_[m] = {0.0, -1.0};
        } else if (2 * m < t.exponent_) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(m) /
                             static_cast<double>(t.exponent_);
            t.roots_[m] = {std::cos(a), std::sin(a)};
        } else {
            t.roots_[m] = std::conj(t.roots_[t.exponent_ - m]);
        }
    }
    return t;
}

std::vector<std::int64_t> CharacterTable::exponents_of(std::size_t k) const {
    std::vector<std::int64_t> c(orders_.size(), 0);
    for (std::size_t j = orders_.size(); j-- > 0;) {
        c[j] = static_cast<std::int64_t>(k % static_cast<std::size_t>(orders_[j]));
        k /= static_cast<std::size_t>(orders_[j]);
    }
    return c;
}

std::int64_t CharacterTable::phase(std::size_t k, std::int64_t n) const {
    const std::size_t r = reduce(n);
    if (unit_index_[r] < 0) return -1;
    const std::size_t nc = orders_.size();
    std::int64_t m = 0;
    std::size_t rest = k;
    for (std::size_t j = nc; j-- > 0;) {
        const auto nj = static_cast<std::size_t>(orders_[j]);
        const auto cj = static_cast<std::int64_t>(rest % nj);
        rest /= nj;
        m = (m + cj * dlog_[r * nc + j] % orders_[j] * scale_[j]) % exponent_;
    }
    return m;
}

std::complex<double> CharacterTable::value(std::size_t k, std::int64_t n) const {
    const std::int64_t m = phase(k, n);
    return m < 0 ? std::complex<double>{} : roots_[static_cast<std::size_t>(m)];
}

std::vector<std::complex<double>> CharacterTable::values(std::size_t k) const {
    std::vector<std::complex<double>> v(static_cast<std::size_t>(q_));
    for (std::int64_t r = 0; r < q_; ++r) v[r] = value(k, r);
    return v;
}

int CharacterTable::parity(std::size_t k) const {
    return phase(k, -1) == 0 ? 0 : 1;
}

bool CharacterTable::is_real(std::size_t k) const {
    const auto c = exponents_of(k);
    for (std::size_t j = 0; j < c.size(); ++j) {
        if ((2 * c[j]) % orders_[j] != 0) return false;
    }
    return true;
}

std::size_t CharacterTable::conjugate(std::size_t k) const {
    const auto c = exponents_of(k);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        idx = idx * static_cast<std::size_t>(orders_[j]) +
              static_cast<std::size_t>((orders_[j] - c[j]) % orders_[j]);
    }
    return idx;
}

bool CharacterTable::is_primitive(std::size_t k) const {
    // chi is induced from modulus d = q/p iff chi(n) = 1 for every unit n = 1 mod d.
    for (auto [p, e] : factorize(q_)) {
        const std::int64_t d = q_ / p;
        bool trivial = true;
        for (std::int64_t n = 1; n < q_; n += d) {
            if (coprime(n) && phase(k, n) != 0) {
                trivial = false;
                break;
            }
        }
        if (trivial) return false;
    }
    return true;
}

}  // namespace signrace
