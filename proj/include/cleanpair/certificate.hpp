#pragma once

#include <string>

#include "cleanpair/kummer.hpp"
#include "json.hpp"

namespace cleanpair {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertificateFormat = "cleanpair-certificate/1";

// Rationals are "num/den" strings, polynomials are coefficient arrays with
// the constant term first, rational functions are {"num": [...], "den": [...]}.
Json certificate_to_json(const CleanPairCertificate& cert);
// Strict: any missing field, unknown enum, or non-canonical rational throws
// CertificateFormatError.
CleanPairCertificate certificate_from_json(const Json& j);

std::string certificate_to_string(const CleanPairCertificate& cert);
CleanPairCertificate certificate_from_string(const std::string& text);

// Shared wire helpers.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json poly_to_json(const PolyQ& p);
PolyQ poly_from_json(const Json& j, Var v);

}  // namespace cleanpair
