#pragma once

#include <string>
#include <vector>

#include "szeta/cubic_fields.hpp"
#include "szeta/series.hpp"

namespace szeta {

// Which Dirichlet series a witness is built for: the two Shintani series,
// the two plain field-counting series, or a rational linear combination
// c1 * xi_plus + c2 * xi_minus.
enum class SeriesKind { xi_minus, xi_plus, f_minus, f_plus, combo };

const char* series_kind_name(SeriesKind kind);            // "xi-", "xi+", ...
SeriesKind series_kind_from_name(const std::string& name);  // throws parse_error

struct SeriesId {
    SeriesKind kind = SeriesKind::xi_minus;
    Rat c1;  // combo only; c1 * c2 must be nonzero there
    Rat c2;
};

struct WitnessOptions {
    Int enumeration_bound = 20000000;  // covers k = 3 defaults for every series kind
    Int disc_ceiling = 200000;        // void-discriminant scan stops here
    Int prime_ceiling = 10000000;     // prime selection scan stops here
    int threads = 1;
};

inline constexpr const char* TOOL_VERSION = "szeta 0.1.0";

// The numeric pattern the non-representability argument consumes: void
// discriminants n_1..n_k, primes p_1..p_k, the adjusted coefficients a(n_i)
// and the grid a(n_i p_j^2).  verdict records whether the pattern closed:
// zero base values, off-diagonal entries equal to the base values, diagonal
// differences bounded away from zero on the correct side.
struct WitnessCertificate {
    SeriesId series;
    Int k = 0;
    std::vector<Int> discs;
    std::vector<Int> primes;
    std::vector<Rat> base_values;
    std::vector<std::vector<Rat>> matrix_values;
    // The same values recomputed through the formula route (Dirichlet-series
    // assembly for xi/combo, counting formulas for f-/f+); the builder
    // requires both routes to agree and records each copy.
    std::vector<Rat> base_values_formula;
    std::vector<std::vector<Rat>> matrix_values_formula;
    bool verdict = false;
    std::vector<std::string> notes;
    std::string tool_version;
    Int enumeration_bound = 0;
};

// Adjusted coefficient of the chosen series at index n > 0:
//   xi_minus / xi_plus: orbit-sum coefficient at disc -n / +n, minus 1
//   f_minus / f_plus:   number of cubic fields of disc -n / +n, unadjusted
//   combo:              c1 * xi_plus(n) + c2 * xi_minus(n) - c2
Rat adjusted_coefficient(const SeriesId& series, Int n, const WitnessOptions& opts = {});

// First k fundamental discriminants of the given sign in the progression
// a mod 36m (a = 21 mod 36, or a = 5 mod 12 for negative sign only;
// gcd(6a, m) = 1), scanned by ascending |n|, skipping any candidate sharing
// a factor other than 3 with an earlier pick, and keeping only desert
// entries: no cubic field of discriminant n, and for positive sign none of
// discriminant -n/3 either.  Emptiness is established by enumeration.
// Throws search_exhausted when the scan ceiling arrives first.
std::vector<Int> find_void_discriminants(int sign, Int a, Int m, Int k,
                                         const WitnessOptions& opts = {});

// For each column j a prime p_j = 1 mod 3 with kronecker(-3 n_i, p_j) and
// kronecker(n_i, p_j) both +1 at i = j and both -1 at i != j, scanned in
// ascending order.
std::vector<Int> select_primes_negative(const std::vector<Int>& discs,
                                        const WitnessOptions& opts = {});

// Positive-discriminant counterpart: p_j = 1 mod 3 splitting completely in
// fields_e[j] (the field of disc -27 n_j) with kronecker(-3 n_j, p_j) = 1
// and kronecker(n_i, p_j) = -1 for i != j.
std::vector<Int> select_primes_positive(const std::vector<Int>& discs,
                                        const std::vector<CubicField>& fields_e,
                                        const WitnessOptions& opts = {});

// Full pipeline: pick discriminants and primes, compute every value by two
// independent routes (orbit enumeration against the field-side formulas),
// throw route_disagreement if any entry differs, and record the verdict.
// Deterministic: output depends only on (series, k, opts bounds).
WitnessCertificate build_certificate(const SeriesId& series, Int k,
                                     const WitnessOptions& opts = {});

// Recomputes everything a certificate claims from its discs and primes
// alone: structural shape, progression membership, coprimality, voidness,
// prime conditions, every value (direct route), and the verdict.  Returns
// true iff all hold and the verdict is true; failure reasons, if requested,
// arrive in machine-readable form ("value_mismatch i=2 j=1" etc).
bool verify_certificate(const WitnessCertificate& cert,
                        std::vector<std::string>* reasons = nullptr,
                        const WitnessOptions& opts = {});

// JSON document, round-tripping bit-exactly; rationals as [num, den].
std::string certificate_to_json(const WitnessCertificate& cert);
WitnessCertificate certificate_from_json(const std::string& text);

}  // namespace szeta
