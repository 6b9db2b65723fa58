#pragma once

// Estimator identifiers used by campaigns, reports and the CLI.

#include <optional>
#include <string>

namespace speccoh {

enum class Method {
  Raw,     // invert the multitaper estimate, no shrinkage
  HS,      // oracle Hilbert-Schmidt shrinkage of S_hat
  QLa,     // oracle quadratic-loss shrinkage, fixed target
  QLb,     // oracle quadratic-loss shrinkage, optimal target
  HSP,     // oracle Hilbert-Schmidt shrinkage of the precision matrix
  QLP,     // oracle quadratic-loss shrinkage of the precision matrix
  QLaEst,  // QLa with estimated traces
  QLbEst,  // QLb with estimated traces
  QLPEst,  // QLP with estimated traces
};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Raw: return "raw";
    case Method::HS: return "hs";
    case Method::QLa: return "qla";
    case Method::QLb: return "qlb";
    case Method::HSP: return "hsp";
    case Method::QLP: return "qlp";
    case Method::QLaEst: return "qla-est";
    case Method::QLbEst: return "qlb-est";
    case Method::QLPEst: return "qlp-est";
  }
  return "?";
}

inline std::optional<Method> parse_method(const std::string& name) {
  if (name == "raw") return Method::Raw;
  if (name == "hs") return Method::HS;
  if (name == "qla") return Method::QLa;
  if (name == "qlb") return Method::QLb;
  if (name == "hsp") return Method::HSP;
  if (name == "qlp") return Method::QLP;
  if (name == "qla-est") return Method::QLaEst;
  if (name == "qlb-est") return Method::QLbEst;
  if (name == "qlp-est") return Method::QLPEst;
  return std::nullopt;
}

inline bool method_uses_estimated_traces(Method m) {
  return m == Method::QLaEst || m == Method::QLbEst || m == Method::QLPEst;
}

// Precision-matrix methods shrink S_hat^-1 directly; the rest shrink S_hat.
inline bool method_is_precision(Method m) {
  return m == Method::HSP || m == Method::QLP || m == Method::QLPEst;
}

}  // namespace speccoh
