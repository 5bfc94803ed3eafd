#pragma once

// Independent reference implementations used to check the library: subset
// enumeration instead of ESU, a second canonicalizer, direct double-loop
// intensity sums, quadrature in place of closed forms. Deliberately simple
// and slow.

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "motifperc/percolation.hpp"
#include "motifperc/window.hpp"

namespace oracles {

// All connected k-subsets as (sorted vertices, induced mask), via a scan of
// every C(n,k) combination.
std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> brute_force_instances(
    const motifperc::WindowGraph& g, int k);

// Minimal relabeled bit-string over all permutations, written independently
// of motifperc::canonical_code.
std::uint32_t reference_canonical(std::uint32_t bits, int k);

// Distinct connected isomorphism classes over all labeled graphs on k nodes.
std::set<std::uint32_t> reference_catalog_codes(int k);

// lambda(t) by the direct O(events x grid) double loop.
std::vector<double> direct_intensity(std::span<const double> events, double theta,
                                     std::span<const double> grid);

// Two-sided Student-t tail via adaptive Simpson quadrature of the density.
double numeric_t_two_sided_p(double t, double dof);

// Log likelihood with the compensator integral done numerically.
double numeric_hawkes_loglik(std::span<const double> events, double horizon, double theta);

std::size_t count_triangles(const motifperc::WindowGraph& g);

motifperc::WindowGraph erdos_renyi(std::uint32_t n, double p, std::uint64_t seed);

// Replays a recorded percolation run and checks the admission rules, batch
// merge semantics, monotone growth, the pass bound and the final covered
// sets. Returns true when everything matches.
bool audit_coverage(const motifperc::WindowGraph& g,
                    std::span<const motifperc::MotifInstance> instances,
                    const motifperc::CoverageResult& result, bool strict);

}  // namespace oracles
