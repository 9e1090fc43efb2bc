#include "raftres/pdf.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "raftres/errors.hpp"

namespace raftres {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParamError(what);
}

void require_arity(const Pdf& pdf, std::size_t n) {
  if (pdf.params.size() != n) {
    throw ParamError(family_name(pdf.family) + " takes " + std::to_string(n) +
                     " parameter(s), got " + std::to_string(pdf.params.size()));
  }
  for (double p : pdf.params) {
    if (!std::isfinite(p)) {
      throw ParamError(family_name(pdf.family) + ": non-finite parameter");
    }
  }
}

double sample_unit_normal(RngStream& rng) {
  // Box-Muller, one variate per call.
  double u1 = rng.next_unit();
  double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

void validate(const Pdf& pdf) {
  switch (pdf.family) {
    case PdfFamily::kDirac:
      require_arity(pdf, 1);
      require(pdf.params[0] >= 0, "dirac: x >= 0 required");
      break;
    case PdfFamily::kExponential:
      require_arity(pdf, 1);
      require(pdf.params[0] > 0, "exponential: lambda > 0 required");
      break;
    case PdfFamily::kErlang:
      require_arity(pdf, 2);
      require(pdf.params[0] > 0 && pdf.params[0] == std::floor(pdf.params[0]),
              "erlang: k must be a positive integer");
      require(pdf.params[1] > 0, "erlang: lambda > 0 required");
      break;
    case PdfFamily::kUniform:
      require_arity(pdf, 2);
      require(pdf.params[0] >= 0, "uniform: a >= 0 required");
      require(pdf.params[0] < pdf.params[1], "uniform: a < b required");
      break;
    case PdfFamily::kRayleigh:
      require_arity(pdf, 1);
      require(pdf.params[0] > 0, "rayleigh: sigma > 0 required");
      break;
    case PdfFamily::kWeibull:
      require_arity(pdf, 2);
      require(pdf.params[0] > 0, "weibull: shape > 0 required");
      require(pdf.params[1] > 0, "weibull: rate > 0 required");
      break;
    case PdfFamily::kNormal:
      require_arity(pdf, 2);
      require(pdf.params[1] > 0, "normal: sigma > 0 required");
      break;
    case PdfFamily::kLogNormal:
      require_arity(pdf, 2);
      require(pdf.params[1] > 0, "lognormal: sigma > 0 required");
      break;
    case PdfFamily::kNeverFires:
      require_arity(pdf, 0);
      break;
  }
}

double sample(const Pdf& pdf, RngStream& rng) {
  switch (pdf.family) {
    case PdfFamily::kDirac:
      return pdf.params[0];
    case PdfFamily::kExponential:
      return -std::log(rng.next_unit()) / pdf.params[0];
    case PdfFamily::kErlang: {
      int k = static_cast<int>(pdf.params[0]);
      double acc = 0;
      for (int i = 0; i < k; ++i) acc += -std::log(rng.next_unit());
      return acc / pdf.params[1];
    }
    case PdfFamily::kUniform:
      return pdf.params[0] + (pdf.params[1] - pdf.params[0]) * rng.next_unit();
    case PdfFamily::kRayleigh:
      return pdf.params[0] * std::sqrt(-2.0 * std::log(rng.next_unit()));
    case PdfFamily::kWeibull: {
      // CDF(t) = 1 - exp(-rate * t^shape)
      double e = -std::log(rng.next_unit());
      return std::pow(e / pdf.params[1], 1.0 / pdf.params[0]);
    }
    case PdfFamily::kNormal: {
      // Repair times must be positive; redraw instead of truncating so the
      // shape on (0, inf) is the conditional normal.
      double x;
      do {
        x = pdf.params[0] + pdf.params[1] * sample_unit_normal(rng);
      } while (x <= 0);
      return x;
    }
    case PdfFamily::kLogNormal:
      return std::exp(pdf.params[0] + pdf.params[1] * sample_unit_normal(rng));
    case PdfFamily::kNeverFires:
      return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

std::string family_name(PdfFamily family) {
  switch (family) {
    case PdfFamily::kDirac: return "dirac";
    case PdfFamily::kExponential: return "exponential";
    case PdfFamily::kErlang: return "erlang";
    case PdfFamily::kUniform: return "uniform";
    case PdfFamily::kRayleigh: return "rayleigh";
    case PdfFamily::kWeibull: return "weibull";
    case PdfFamily::kNormal: return "normal";
    case PdfFamily::kLogNormal: return "lognormal";
    case PdfFamily::kNeverFires: return "never";
  }
  return "?";
}

std::string to_string(const Pdf& pdf) {
  std::string out = family_name(pdf.family);
  if (pdf.family == PdfFamily::kNeverFires) return out;
  out += '(';
  for (std::size_t i = 0; i < pdf.params.size(); ++i) {
    if (i) out += ',';
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, pdf.params[i]);
    out.append(buf, res.ptr);
  }
  out += ')';
  return out;
}

}  // namespace raftres
