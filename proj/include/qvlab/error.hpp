#ifndef QVLAB_ERROR_HPP
#define QVLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qvlab {

/// Failure classes surfaced by the library. Each maps to one family of
/// preconditions; tests match on the code, messages are for humans.
enum class errc {
  dimension_mismatch,
  invalid_parameter,
  singular_point,      // evaluation at a branch point where the quantity blows up
  critical_radius,     // sphere integral requested on a circle through a branch point
  frequency_undefined, // H(r) vanishes, I(r) = rD/H has no value
  log_domain,          // log of a non-positive functional value
  quadrature_budget,   // adaptive rule hit its node cap without converging
  no_gradient,         // functional needs |Df|^2 but the function carries none
  unconfigured_constant,
  unknown_function,
  unknown_functional,
  unknown_suite,
  bad_config,
  domain,              // argument outside the functional's domain
  nonfinite,           // a sampled integrand value was NaN/inf
  internal_inconsistency  // two independent evaluation paths disagree
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace qvlab

#endif
