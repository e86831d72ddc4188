#pragma once

#include <string>
#include <vector>

#include "lieq/counting.hpp"
#include "lieq/goodfn.hpp"
#include "lieq/limit.hpp"
#include "lieq/psi.hpp"
#include "lieq/regular.hpp"

namespace lieq {

// JSON/CSV serialization. Everything round-trips through strings so the
// vendored JSON header stays out of the public interface. Rationals are
// emitted as "p/q" strings; floating-point fields are objects carrying an
// explicit "tol" attribute stating how far the value may sit from the
// exact quantity it approximates. Output is deterministic: two calls on
// equal data produce identical bytes.

// {"algebra": tag, "coeffs": ["p/q", ...]} in basis order
std::string element_to_json(const Algebra& g, const QVec& x);
// rejects wrong tag or coefficient count
QVec element_from_json(const Algebra& g, const std::string& text);

// w-supported elements as a flat map {"c1,c2,..": "p/q"} keyed by
// positive-root coordinates; zeros are omitted on write
std::string nilpotent_to_json(const Algebra& g, const QVec& n);
QVec nilpotent_from_json(const Algebra& g, const std::string& text);

std::string conjugation_to_json(const Algebra& g, const ConjugationData& cd);
std::string limiting_to_json(const Algebra& g, const LimitingResult& res);
std::string certificate_to_json(double lambda, double delta,
                                const GoodCertificate& c);
std::string cp_to_json(const FieldInvariants& inv);
std::string sandwich_to_json(const SandwichReport& rep);

// RFC 4180 (CRLF, header "T,N,seconds"); stable_timing zeroes the wall
// clock column so identical configurations yield identical bytes
std::string count_rows_to_csv(const std::vector<CountRow>& rows,
                              bool stable_timing);

}  // namespace lieq
