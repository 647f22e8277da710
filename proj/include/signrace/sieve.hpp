#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "signrace/characters.hpp"

namespace signrace {

inline constexpr std::int64_t kSieveCapacity = 10'000'000'000LL;
inline constexpr std::int64_t kReferenceCapacity = 100'000'000LL;
/// Odd numbers per sieve segment.
inline constexpr std::int64_t kSegmentOdds = 1 << 20;

/// Checkpointed prime counts by residue class.
///
/// Row i of every table holds the value at x = checkpoints[i] (all n <= x);
/// column j refers to residues[j], the units mod q in ascending order.
struct ResidueCensus {
    std::int64_t modulus = 0;
    std::vector<std::int64_t> checkpoints;
    std::vector<std::int64_t> residues;
    std::vector<std::int64_t> pi;   // [checkpoint * residues.size() + residue]
    std::vector<double> psi;
    std::vector<double> Pi;
    std::vector<std::int64_t> pi_total;
    std::vector<double> psi_total;
    std::vector<double> Pi_total;

    std::size_t width() const noexcept { return residues.size(); }
    std::int64_t pi_at(std::size_t c, std::size_t r) const { return pi[c * width() + r]; }
    double psi_at(std::size_t c, std::size_t r) const { return psi[c * width() + r]; }
    double Pi_at(std::size_t c, std::size_t r) const { return Pi[c * width() + r]; }
    /// Column of residue a (reduced mod q), or -1 when a is not a unit.
    int column(std::int64_t a) const;
};

/// Exact prime counts and weighted sums at every checkpoint, by the parallel segmented sieve.
/// Output is identical for any number of OpenMP threads.
ResidueCensus census(std::int64_t q, std::int64_t x_max, std::span<const std::int64_t> checkpoints);

/// Geometric checkpoint grid in [start, x_max] with the given ratio; always ends at x_max.
std::vector<std::int64_t> geometric_checkpoints(std::int64_t start, std::int64_t x_max, double ratio);

/// Header `x,a,pi,psi,Pi`, one row per (checkpoint, residue), 12 significant digits.
void write_census_csv(std::ostream& out, const ResidueCensus& c);
/// Reads the CSV back; totals are left empty.
ResidueCensus read_census_csv(std::istream& in, std::int64_t q);

/// Primes up to n (simple sieve), used for base primes and small oracles.
std::vector<std::int64_t> small_primes(std::int64_t n);

/// Calls `sink` with every prime <= x_max in ascending order, one block at a
/// time.  Blocks are sieved in parallel and handed over sequentially.
void for_each_prime_block(std::int64_t x_max,
                          const std::function<void(std::span<const std::int64_t>)>& sink);

/// Prime powers p^k <= x_max with k >= 2, ascending, with their primes.
struct PrimePower {
    std::int64_t n;
    std::int64_t p;
    int k;
};
std::vector<PrimePower> higher_prime_powers(std::int64_t x_max);

/// pi(x) by an unsegmented byte sieve over all integers; the serial
/// reference for the segmented kernel.
std::int64_t pi_reference(std::int64_t x);

/// pi(x) through the segmented kernel with a single checkpoint.
std::int64_t pi_segmented(std::int64_t x);

/// sum_{n <= x} chi(n) Lambda(n) from a census row.
std::complex<double> psi_chi(const ResidueCensus& c, std::size_t checkpoint,
                             const CharacterTable& table, std::size_t k);

/// sum_{n <= x} chi(n) Lambda(n) by direct enumeration of prime powers.
std::complex<double> psi_chi_direct(double x, const CharacterTable& table, std::size_t k);

}  // namespace signrace
