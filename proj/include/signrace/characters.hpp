#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace signrace {

/// The full group of Dirichlet characters mod q.
///
/// The unit group (Z/qZ)^* is written as a product of cyclic components:
/// <-1> and <5> for the 2-part (when present), then the least primitive root
/// of each odd prime power in ascending order.  A character is a vector of
/// exponents c_j, and chi(n) = exp(2 pi i sum_j c_j e_j(n) / n_j) where e_j(n)
/// is the discrete log of n in component j.  Phases are kept as exact integers
/// over the group exponent and only turned into complex numbers on demand.
///
/// Index 0 is the principal character; the remaining indices run through the
/// exponent vectors in mixed-radix order with the last component fastest.
class CharacterTable {
public:
    static constexpr std::int64_t kMaxOrder = 10000;

    /// Throws DomainError for q < 3 and CapacityError for phi(q) > kMaxOrder.
    static CharacterTable build(std::int64_t q);

    std::int64_t modulus() const noexcept { return q_; }
    std::int64_t phi() const noexcept { return phi_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(phi_); }
    std::int64_t exponent() const noexcept { return exponent_; }

    bool coprime(std::int64_t n) const noexcept { return unit_index_[reduce(n)] >= 0; }
    /// Position of n mod q among the sorted units, or -1.
    int unit_index(std::int64_t n) const noexcept { return unit_index_[reduce(n)]; }
    std::span<const std::int64_t> units() const noexcept { return units_; }

    /// Phase numerator m with chi_k(n) = exp(2 pi i m / exponent()), or -1 off the units.
    std::int64_t phase(std::size_t k, std::int64_t n) const;
    std::complex<double> value(std::size_t k, std::int64_t n) const;
    /// chi_k(0..q-1).
    std::vector<std::complex<double>> values(std::size_t k) const;

    bool is_principal(std::size_t k) const noexcept { return k == 0; }
    /// (1 - chi(-1)) / 2.
    int parity(std::size_t k) const;
    bool is_real(std::size_t k) const;
    std::size_t conjugate(std::size_t k) const;
    /// True when chi_k is not induced from a character of a proper divisor of q.
    bool is_primitive(std::size_t k) const;

    std::span<const std::int64_t> component_orders() const noexcept { return orders_; }
    std::vector<std::int64_t> exponents_of(std::size_t k) const;

private:
    std::size_t reduce(std::int64_t n) const noexcept {
        std::int64_t r = n % q_;
        return static_cast<std::size_t>(r < 0 ? r + q_ : r);
    }

    std::int64_t q_ = 0;
    std::int64_t phi_ = 0;
    std::int64_t exponent_ = 1;
    std::vector<std::int64_t> orders_;   // n_j
    std::vector<std::int64_t> scale_;    // exponent_ / n_j
    std::vector<std::int64_t> dlog_;     // q * components, -1 off units
    std::vector<int> unit_index_;
    std::vector<std::int64_t> units_;
    std::vector<std::complex<double>> roots_;  // exp(2 pi i m / exponent_)
};

/// Number of x in [1, q] with x^2 = 1 mod q.
std::int64_t count_square_roots_of_unity(std::int64_t q);

double von_mangoldt(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

/// Prime factorisation as (p, k) pairs, ascending p.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace signrace
