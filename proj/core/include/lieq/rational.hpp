#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieq {

using QQ = mpq_class;
using QVec = std::vector<QQ>;

struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// parse "p", "-p/q", with optional whitespace; throws std::invalid_argument
QQ qq_parse(const std::string& s);

std::string qq_str(const QQ& x);

inline double qd(const QQ& x) { return x.get_d(); }

inline int qsign(const QQ& x) { return sgn(x); }

// exact square root if x is a perfect square of a rational, else nullopt
std::optional<QQ> qq_sqrt_exact(const QQ& x);

QVec qvec_zero(size_t n);
bool qvec_is_zero(const QVec& v);
QVec qvec_add(const QVec& a, const QVec& b);
QVec qvec_sub(const QVec& a, const QVec& b);
QVec qvec_scale(const QQ& c, const QVec& a);

}  // namespace lieq
