#include "rado/reduce.hpp"

#include <algorithm>

namespace rado {

Natural BoundCertificate::bound() const { return pow_natural(lcm, ell); }

std::string BoundCertificate::claim() const {
  std::string lhs = "f_" + std::to_string(r) + "(" + std::to_string(equation.k());
  if (ell != 1) lhs += "," + std::to_string(ell);
  return lhs + ") ≤ " + to_decimal(bound());
}

BoundCertificate upper_bound_from_witness(const Equation& eq, std::span<const Value> A, unsigned r,
                                          const SearchOptions& options) {
  if (eq.family() != Family::LinearSum) {
    throw DomainError("the lcm reduction takes a witness for the linear equation");
  }
  WitnessVerdict verdict = is_witness(eq, A, r, options);
  if (verdict.outcome != Outcome::IsWitness) {
    throw NotAWitness("set is not a " + std::to_string(r) + "-color witness; counterexample " +
                          to_string(*verdict.counterexample),
                      *verdict.counterexample);
  }
  BoundCertificate cert;
  cert.equation = Equation::unit_fraction(eq.k());
  cert.r = r;
  cert.witness = normalize_set(A);
  cert.verdict = std::move(verdict);
  cert.lcm = lcm_of_set(cert.witness);
  return cert;
}

BoundCertificate power_lift_bound(const BoundCertificate& cert, unsigned ell) {
  if (ell < 1) throw DomainError("lift exponent must be at least 1");
  if (cert.ell != 1) throw DomainError("power lift applies to unlifted certificates");
  if (ell == 1) return cert;
  BoundCertificate out = cert;
  out.equation = Equation::fractional_power(cert.equation.k(), ell);
  out.ell = ell;
  return out;
}

std::string_view bound_variant_name(BoundVariant v) {
  switch (v) {
    case BoundVariant::BrownRodl:
      return "brown-rodl";
    case BoundVariant::New6:
      return "new6";
    case BoundVariant::Special2:
      return "special2";
    case BoundVariant::LowerKR:
      return "lower-kr";
    case BoundVariant::ChiProduct:
      return "chi-product";
  }
  return "?";
}

Natural closed_form_bound(unsigned kk, BoundVariant variant, unsigned r) {
  if (kk < 2) throw DomainError("closed-form bounds require k >= 2");
  const Natural k = kk;
  switch (variant) {
    case BoundVariant::BrownRodl:
      return k * k * (k * k - k + 1) * (k * k + k - 1);
    case BoundVariant::New6:
      return 6 * k * (k + 1) * (k + 2);
    case BoundVariant::Special2:
      if (kk < 4 || (kk % 2 != 0 && kk % 3 == 0)) {
        throw DomainError("special2 bound requires k >= 4 with k even or not divisible by 3");
      }
      return 2 * k * (k + 1) * (k + 2);
    case BoundVariant::LowerKR:
      if (r < 2) throw DomainError("lower bound requires r >= 2");
      return pow_natural(k, r);
    case BoundVariant::ChiProduct: {
      if (kk < 3) throw DomainError("chi product requires k >= 3");
      const Natural k2 = k * k;
      const Natural k3 = k2 * k;
      const Natural factors[] = {
          k3,
          k + 1,
          k + 2,
          k2 - k + 1,
          k - 1,
          k2 + 1,
          k2 + k - 1,
          k2 + k + 1,
          2 * k2 - 2 * k + 1,
          2 * k - 1,
          2 * k2 - k + 1,
          2 * k2 - 1,
          2 * k2 + k - 2,
          3 * k - 2,
          3 * k2 - k - 1,
          3 * k2 - 2,
          k3 + k - 1,
          k3 + k2 - 1,
          k3 + k2 + k - 2,
          k3 + 2 * k2 - k - 1,
          k3 + 2 * k2 - 2,
      };
      static_assert(std::size(factors) == 21);
      Natural product = 1;
      for (const auto& f : factors) product *= f;
      return product;
    }
  }
  return 0;
}

nlohmann::json certificate_to_json(const BoundCertificate& cert) {
  nlohmann::json doc;
  doc["equation"] = std::string(family_name(cert.equation.family()));
  doc["k"] = cert.equation.k();
  doc["ell"] = cert.ell;
  doc["r"] = cert.r;
  doc["witness"] = cert.witness;
  doc["lcm"] = to_decimal(cert.lcm);
  doc["bound"] = to_decimal(cert.bound());
  doc["claim"] = cert.claim();
  doc["verifier_version"] = std::string(kVerifierVersion);
  return doc;
}

bool recheck_certificate(const BoundCertificate& cert, const SearchOptions& options) {
  if (lcm_of_set(cert.witness) != cert.lcm) return false;
  const auto v = is_witness(Equation::linear(cert.equation.k()), cert.witness, cert.r, options);
  return v.outcome == Outcome::IsWitness;
}

BoundCertificate certificate_from_json(const nlohmann::json& doc, const SearchOptions& options) {
  try {
    const unsigned k = doc.at("k").get<unsigned>();
    const unsigned ell = doc.at("ell").get<unsigned>();
    const unsigned r = doc.at("r").get<unsigned>();
    const auto witness = doc.at("witness").get<std::vector<Value>>();
    const Natural stored_lcm(doc.at("lcm").get<std::string>());

    BoundCertificate cert = upper_bound_from_witness(Equation::linear(k), witness, r, options);
    if (cert.lcm != stored_lcm) {
      throw Error("certificate lcm " + to_decimal(stored_lcm) + " does not match recomputed " +
                  to_decimal(cert.lcm));
    }
    cert = power_lift_bound(cert, ell);
    const Family fam = parse_family(doc.at("equation").get<std::string>());
    if (fam != cert.equation.family()) throw Error("certificate equation family does not match its ell");
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed certificate: ") + e.what());
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e) != nullptr) throw;
    throw Error(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace rado
