#ifndef RAFTRES_PDF_HPP_
#define RAFTRES_PDF_HPP_

#include <string>
#include <vector>

#include "raftres/rng.hpp"

namespace raftres {

enum class PdfFamily {
  kDirac,
  kExponential,
  kErlang,
  kUniform,
  kRayleigh,
  kWeibull,
  kNormal,
  kLogNormal,
  kNeverFires,
};

// A probability distribution over times, given as a family plus its
// parameter list. Parameter conventions (documented in docs/galileo.md):
//   dirac(x)            point mass at x >= 0
//   exponential(l)      rate l, CDF 1-exp(-l*t)
//   erlang(k,l)         k in N>0 phases of rate l
//   uniform(a,b)        continuous on [a,b], 0 <= a < b
//   rayleigh(s)         CDF 1-exp(-t^2/(2 s^2))
//   weibull(k,l)        shape k, CDF 1-exp(-l*t^k); scale form 1/l^(1/k)
//   normal(m,s)         rejection-sampled until > 0
//   lognormal(m,s)      exp of Normal(m,s)
//   never               never fires (sample is +infinity)
struct Pdf {
  PdfFamily family = PdfFamily::kNeverFires;
  std::vector<double> params;

  static Pdf dirac(double x) { return {PdfFamily::kDirac, {x}}; }
  static Pdf exponential(double rate) {
    return {PdfFamily::kExponential, {rate}};
  }
  static Pdf erlang(double k, double rate) {
    return {PdfFamily::kErlang, {k, rate}};
  }
  static Pdf uniform(double a, double b) { return {PdfFamily::kUniform, {a, b}}; }
  static Pdf rayleigh(double sigma) { return {PdfFamily::kRayleigh, {sigma}}; }
  static Pdf weibull(double shape, double rate) {
    return {PdfFamily::kWeibull, {shape, rate}};
  }
  static Pdf normal(double mu, double sigma) {
    return {PdfFamily::kNormal, {mu, sigma}};
  }
  static Pdf lognormal(double mu, double sigma) {
    return {PdfFamily::kLogNormal, {mu, sigma}};
  }
  static Pdf never() { return {PdfFamily::kNeverFires, {}}; }

  bool never_fires() const { return family == PdfFamily::kNeverFires; }

  friend bool operator==(const Pdf&, const Pdf&) = default;
};

// Throws ParamError naming the offending parameter.
void validate(const Pdf& pdf);

// Draws one time from a validated pdf. Finite samples are strictly
// positive except for dirac(0); NeverFires yields +infinity.
double sample(const Pdf& pdf, RngStream& rng);

// Canonical lowercase spelling used by the printer ("exponential", ...).
std::string family_name(PdfFamily family);

std::string to_string(const Pdf& pdf);

}  // namespace raftres

#endif  // RAFTRES_PDF_HPP_
