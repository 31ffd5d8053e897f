#pragma once

#include "rado/colorability.hpp"
#include "rado/equations.hpp"
#include "rado/errors.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rado {

inline constexpr std::string_view kVerifierVersion = "rado-verifier 1.0.0";

/// An upper bound on a unit-fraction (or fractional-power) Rado number,
/// backed by a set A on which every r-coloring has a monochromatic solution
/// to x_1 + ... + x_k = y. With L = lcm(A), the map a -> L/a sends such a
/// solution to a unit-fraction solution inside [1, L].
struct BoundCertificate {
  Equation equation = Equation::unit_fraction(2);  // the bounded equation
  unsigned r = 2;
  std::vector<Value> witness;  // ascending
  WitnessVerdict verdict;
  Natural lcm;
  unsigned ell = 1;

  /// lcm^ell.
  Natural bound() const;
  /// e.g. "f_2(5) ≤ 420" or "f_2(2,2) ≤ 3600".
  std::string claim() const;
};

/// The linear-equation witness hypothesis failed.
class NotAWitness : public Error {
 public:
  NotAWitness(const std::string& what, Coloring counterexample)
      : Error(what), counterexample_(std::move(counterexample)) {}
  const Coloring& counterexample() const { return counterexample_; }

 private:
  Coloring counterexample_;
};

inline Natural lcm_of_set(std::span<const Value> A) { return lcm_of(A); }

/// Verifies A is an r-color witness for the linear equation with eq.k()
/// terms and mints a certificate for f_r(k) <= lcm(A).
BoundCertificate upper_bound_from_witness(const Equation& eq, std::span<const Value> A, unsigned r,
                                          const SearchOptions& options = {});

/// f_r(k, ell) <= L^ell from a certificate for f_r(k) <= L. ell == 1 returns
/// the input unchanged.
BoundCertificate power_lift_bound(const BoundCertificate& cert, unsigned ell);

enum class BoundVariant {
  BrownRodl,   // k^2 (k^2-k+1)(k^2+k-1), upper bound on f_2(k)
  New6,        // 6k(k+1)(k+2), upper bound on f_2(k)
  Special2,    // 2k(k+1)(k+2) for k >= 4 even or not divisible by 3
  LowerKR,     // k^r, lower bound on f_r(k)
  ChiProduct,  // 21-factor product bounding lcm(chi_set(k)), k >= 3
};

std::string_view bound_variant_name(BoundVariant v);

/// Exact value of a closed-form bound. r is used by LowerKR only.
Natural closed_form_bound(unsigned k, BoundVariant variant, unsigned r = 2);

/// JSON document with equation family, k, ell, r, ascending witness values,
/// lcm as decimal text, claim text and verifier version.
nlohmann::json certificate_to_json(const BoundCertificate& cert);

/// Parses a certificate and re-verifies it: the witness must again be a
/// witness and the stored lcm must match. Throws Error on any mismatch.
BoundCertificate certificate_from_json(const nlohmann::json& doc, const SearchOptions& options = {});

/// Re-runs the witness check and lcm computation for a certificate.
bool recheck_certificate(const BoundCertificate& cert, const SearchOptions& options = {});

}  // namespace rado
