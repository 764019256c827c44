#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the routines it is meant to check.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "idap/empirical.hpp"
#include "idap/mpoly.hpp"

namespace oracle {

using idap::BigInt;
using idap::BigRat;
using idap::MPoly;

/// Least D >= 1 with D * v integral, by direct search.
std::int64_t brute_affine_height(const std::vector<BigRat>& v, std::int64_t limit = 1 << 20);

/// Primitive points p/q in the box by scanning every integer vector.
std::vector<std::vector<std::int64_t>> brute_primitive(const idap::Box& box, std::int64_t q);

/// Is p = sum h_i g_i with deg h_i <= h_degree? Decided exactly by Gaussian
/// elimination on the coefficient system.
bool combination_exists(const MPoly& p, const std::vector<MPoly>& gens, unsigned h_degree = 4);

/// Random polynomial with integer coefficients in [-c, c], total degree <= deg.
MPoly random_poly(std::mt19937_64& rng, std::size_t n, unsigned deg, int c = 3, unsigned max_terms = 4);

/// Cauchy-condensed partial-sum heuristic for sum_r r^n f(psi(r^d)) with
/// psi = c r^-tau log(e+r)^-beta, f = r^s log(1/r)^gamma. Returns the fitted
/// log2 slope of 2^k a(2^k) over k in [k_lo, k_hi]; 2^k_hi ~ 10^6.
double condensed_slope(unsigned n, unsigned d, double c, double tau, double beta, double s, double gamma,
                       int k_lo = 10, int k_hi = 20);

enum class Guess { converges, diverges, abstain };
Guess series_guess(unsigned n, unsigned d, double c, double tau, double beta, double s, double gamma);

/// Cells of side eps anchored at the box corner meeting some ball, by
/// visiting every cell (n <= 2, small grids only).
std::uint64_t brute_cells(const idap::Box& box, const std::vector<idap::Ball>& balls, const BigRat& eps);

}  // namespace oracle
